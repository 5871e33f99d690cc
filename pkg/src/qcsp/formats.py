"""Text formats.

Structure files (``.rel``)::

    # comments run to end of line
    domain 2
    relation E 2
    0 1
    1 0
    end

Sentence files (``.ph``)::

    prefix A x E y
    atom E x y
    atom E @0 y

A term ``@k`` is the constant element ``k``.  A file holding the single line
``false`` is the bottom sentence; no ``atom`` lines means the empty (true) body.
"""

from __future__ import annotations

from typing import Iterator, List, Optional, Tuple

from .logic import EXISTS, FORALL, Atom, Const, PHSentence
from .polymorphism import OperationTable
from .structures import Signature, Structure


class FormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = ""):
        where = f"{source}: " if source else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def _tokens(text: str) -> Iterator[Tuple[int, List[Tuple[int, str]]]]:
    """Yield (line number, [(column, token)]) for each non-blank line, comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((col + 1, tok))
            col += len(tok)
        if toks:
            yield lineno, toks


def _int(tok: Tuple[int, str], lineno: int, what: str) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"expected {what}, got {text!r}", lineno, col) from None


def parse_structure(text: str) -> Structure:
    lines = list(_tokens(text))
    if not lines:
        raise FormatError("empty structure file", 1)
    lineno, toks = lines[0]
    if toks[0][1] != "domain" or len(toks) != 2:
        raise FormatError("expected 'domain <m>'", lineno, toks[0][0])
    size = _int(toks[1], lineno, "a domain size")
    if size < 1:
        raise FormatError("domain must be nonempty", lineno, toks[1][0])

    symbols: List[Tuple[str, int]] = []
    rels = {}
    current: Optional[str] = None
    for lineno, toks in lines[1:]:
        head = toks[0][1]
        if current is None:
            if head != "relation" or len(toks) != 3:
                raise FormatError("expected 'relation <name> <arity>'", lineno, toks[0][0])
            name = toks[1][1]
            arity = _int(toks[2], lineno, "an arity")
            if arity < 1:
                raise FormatError("arity must be >= 1", lineno, toks[2][0])
            if name in rels:
                raise FormatError(f"relation {name!r} declared twice", lineno, toks[1][0])
            symbols.append((name, arity))
            rels[name] = []
            current = name
        elif head == "end" and len(toks) == 1:
            current = None
        else:
            arity = symbols[-1][1]
            if len(toks) != arity:
                raise FormatError(f"tuple of length {len(toks)} in {current!r} of arity {arity}",
                                  lineno, toks[0][0])
            t = tuple(_int(tok, lineno, "an element") for tok in toks)
            for (col, _), x in zip(toks, t):
                if not 0 <= x < size:
                    raise FormatError(f"element {x} outside domain 0..{size - 1}", lineno, col)
            rels[current].append(t)
    if current is not None:
        raise FormatError(f"relation {current!r} missing 'end'", lines[-1][0] + 1)
    return Structure(Signature(tuple(symbols)), size, rels)


def dump_structure(s: Structure) -> str:
    out = [f"domain {s.size}"]
    for name, arity in s.signature:
        out.append(f"relation {name} {arity}")
        out.extend(" ".join(map(str, t)) for t in sorted(s.relations[name]))
        out.append("end")
    return "\n".join(out) + "\n"


def _term(tok: Tuple[int, str], lineno: int):
    col, text = tok
    if text.startswith("@"):
        try:
            return Const(int(text[1:]))
        except ValueError:
            raise FormatError(f"bad constant {text!r}", lineno, col) from None
    return text


def parse_sentence(text: str) -> PHSentence:
    lines = list(_tokens(text))
    if len(lines) == 1 and [t for _, t in lines[0][1]] == ["false"]:
        return PHSentence.bottom()
    prefix: List[Tuple[str, str]] = []
    body: List[Atom] = []
    seen_prefix = False
    bound = set()
    for lineno, toks in lines:
        col, head = toks[0]
        if head == "prefix":
            if seen_prefix or body:
                raise FormatError("a single 'prefix' line must precede the atoms", lineno, col)
            seen_prefix = True
            rest = toks[1:]
            if len(rest) % 2:
                raise FormatError("prefix needs quantifier/variable pairs", lineno, rest[-1][0])
            for (qcol, q), (vcol, v) in zip(rest[::2], rest[1::2]):
                if q not in (FORALL, EXISTS):
                    raise FormatError(f"quantifier must be A or E, got {q!r}", lineno, qcol)
                if v.startswith("@"):
                    raise FormatError(f"cannot quantify a constant {v!r}", lineno, vcol)
                if v in bound:
                    raise FormatError(f"variable {v!r} quantified twice", lineno, vcol)
                bound.add(v)
                prefix.append((q, v))
        elif head == "atom":
            if len(toks) < 3:
                raise FormatError("expected 'atom <rel> <term>...'", lineno, col)
            args = []
            for tok in toks[2:]:
                term = _term(tok, lineno)
                if isinstance(term, str) and term not in bound:
                    raise FormatError(f"variable {term!r} is not quantified", lineno, tok[0])
                args.append(term)
            body.append(Atom(toks[1][1], tuple(args)))
        elif head == "false":
            raise FormatError("'false' must be the only line of the file", lineno, col)
        else:
            raise FormatError(f"unknown directive {head!r}", lineno, col)
    phi = PHSentence(tuple(prefix), tuple(body))
    try:
        phi.symbols()
    except ValueError as exc:
        raise FormatError(str(exc), lines[-1][0]) from None
    return phi


def dump_sentence(phi: PHSentence) -> str:
    if phi.is_bottom:
        return "false\n"
    out = ["prefix" + "".join(f" {q} {v}" for q, v in phi.prefix)]
    out.extend(f"atom {a.symbol} " + " ".join(str(t) for t in a.args) for a in phi.body)
    return "\n".join(out) + "\n"


def dump_operation(f: OperationTable) -> str:
    out = [f"operation {f.arity} {f.domain_size}"]
    out.extend(" ".join(map(str, args)) + f" -> {value}" for args, value in f.rows())
    return "\n".join(out) + "\n"
