"""Oracle cross-checks over bounded-exhaustive and seeded random instance suites.

Each ``check_*`` function compares a construction against the brute-force
evaluators and appends any disagreement to a :class:`Report`.  The
``run_suite`` entry point bundles them the way ``qcsp verify`` runs them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

from .collapse import (apply_collapsing, build_collapse_structure, chen_reduction,
                       qcsp_via_collapsibility, survivor_sets)
from .fixtures import FIXTURES, UNARY_PAIR
from .formats import dump_sentence, dump_structure
from .generate import (exhaustive_pp, exhaustive_sentences, perturb_f_atoms, random_atoms,
                       random_f_sentence, random_pp, random_sentence)
from .logic import And, Atom, FOSentence, Not, PHSentence, canonical_database
from .microcosm import F_SYMBOL, backward_reduce, forward_reduce, microcosm_structure
from .polymorphism import find_nu, is_near_unanimity, is_polymorphism
from .solvers import csp_eval, eval_fo, qcsp_eval
from .structures import Structure, find_homomorphism

SUITES = ("microcosm", "chen", "collapse", "fo")

# CSP(U2) holds exactly when no variable is forced into both unary relations
THETA_U2 = FOSentence((("A", "x"),), Not(And(Atom("U0", ("x",)), Atom("U1", ("x",)))))


@dataclass
class Discrepancy:
    check: str
    fixture: str
    structure: Structure
    sentence: PHSentence
    expected: object
    got: object

    def render(self) -> str:
        return (f"[{self.check}] fixture {self.fixture}: expected {self.expected}, got {self.got}\n"
                f"--- structure (.rel)\n{dump_structure(self.structure)}"
                f"--- sentence (.ph)\n{dump_sentence(self.sentence)}")


@dataclass
class Report:
    suite: str
    checked: int = 0
    discrepancies: List[Discrepancy] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def compare(self, check, fixture, structure, sentence, expected, got):
        self.checked += 1
        if expected != got:
            self.discrepancies.append(Discrepancy(check, fixture, structure, sentence, expected, got))

    def render(self) -> str:
        lines = [f"suite {self.suite}: {self.checked} checks, "
                 f"{len(self.discrepancies)} discrepancies"]
        lines += self.notes
        lines += [d.render() for d in self.discrepancies]
        return "\n".join(lines)


def rng_for(seed: int, *labels) -> random.Random:
    return random.Random(":".join(map(str, (seed,) + labels)))


def check_forward(report: Report, name: str, b: Structure, sentences: Iterable[PHSentence]):
    c = microcosm_structure(b, F_SYMBOL)
    for phi in sentences:
        psi = forward_reduce(phi, F_SYMBOL, b.signature)
        report.compare("forward", name, b, phi, qcsp_eval(b, phi), qcsp_eval(c, psi))


def check_backward(report: Report, name: str, b: Structure, sentences: Iterable[PHSentence]):
    c = microcosm_structure(b, F_SYMBOL)
    for phi in sentences:
        psi = backward_reduce(phi, F_SYMBOL, c.signature)
        report.compare("backward", name, c, phi, qcsp_eval(c, phi), qcsp_eval(b, psi))


def check_chen(report: Report, name: str, b: Structure, sentences: Iterable[PHSentence],
               elements: Sequence[int]):
    for phi in sentences:
        universals = phi.universals
        for size in range(len(universals) + 1):
            for survivors in itertools.combinations(universals, size):
                for a in elements:
                    collapsed = apply_collapsing(phi, survivors, a)
                    report.compare("chen", name, b, collapsed, qcsp_eval(b, collapsed),
                                   csp_eval(b, chen_reduction(collapsed, b.size)))


def check_collapsibility(report: Report, name: str, b: Structure,
                         sentences: Iterable[PHSentence], j: int, elements: Sequence[int]):
    for phi in sentences:
        truth = qcsp_eval(b, phi)
        for a in elements:
            report.compare(f"collapse(j={j},a={a})", name, b, phi, truth,
                           qcsp_via_collapsibility(b, phi, j, a))


def collapse_structures_decide(b: Structure, phi: PHSentence, j: int, a: int = 0) -> bool:
    """Conjunction over survivor sets of 'D(survivors) maps homomorphically to b'."""
    return all(find_homomorphism(build_collapse_structure(b, phi, lam, a), b) is not None
               for lam in survivor_sets(phi, j))


def check_collapse_structures(report: Report, name: str, b: Structure,
                              sentences: Iterable[PHSentence], j: int, elements: Sequence[int]):
    for phi in sentences:
        truth = qcsp_eval(b, phi)
        for a in elements:
            report.compare(f"D-conjunction(a={a})", name, b, phi, truth,
                           collapse_structures_decide(b, phi, j, a))
            universals = phi.universals
            for size in range(len(universals) + 1):
                for lam in itertools.combinations(universals, size):
                    d = build_collapse_structure(b, phi, lam, a)
                    chen = chen_reduction(apply_collapsing(phi, lam, a), b.size)
                    report.compare(f"D-vs-chen(a={a},survivors={','.join(lam)})", name, b, phi,
                                   csp_eval(b, chen), find_homomorphism(d, b) is not None)


def check_c_validity(report: Report, name: str, b: Structure, rng: random.Random,
                     conjunctions: int, instances: int):
    c = microcosm_structure(b, F_SYMBOL)
    top = b.size
    for _ in range(conjunctions):
        variables = [f"v{i}" for i in range(1, rng.randint(1, 6) + 1)]
        atoms = random_atoms(rng, c.signature, variables, rng.randint(1, 8))
        phi = PHSentence(tuple(("E", v) for v in variables), tuple(atoms))
        all_c = all(tuple(top for _ in a.args) in c.relations[a.symbol] for a in atoms)
        report.compare("all-c", name, c, phi, True, all_c)
    for _ in range(instances):
        phi = random_pp(rng, c.signature, max_vars=6, max_atoms=8)
        report.compare("csp(C)", name, c, phi, True, csp_eval(c, phi))


def check_fo(report: Report, sentences: Iterable[PHSentence]):
    u2 = FIXTURES["U2"]
    for phi in sentences:
        db = canonical_database(phi, u2.signature).structure
        report.compare("fo", "U2", u2, phi, csp_eval(u2, phi), eval_fo(db, THETA_U2))


def backward_sample(rng: random.Random, b: Structure, count: int) -> List[PHSentence]:
    """Random σ ⊎ {F} sentences: three quarters unconstrained, the rest perturbed forward images."""
    signature = b.signature.extend(F_SYMBOL, 2)
    out = []
    for i in range(count):
        if i % 4 == 3:
            phi = random_sentence(rng, b.signature, max_vars=5, max_atoms=4)
            out.append(perturb_f_atoms(rng, forward_reduce(phi, F_SYMBOL, b.signature)))
        else:
            out.append(random_f_sentence(rng, signature, F_SYMBOL))
    return out


def run_suite(suite: str, samples: int = 100, seed: int = 0) -> Report:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = Report(suite)
    if suite == "microcosm":
        for name in ("K2", "P1", "U2", "K3"):
            b = FIXTURES[name]
            rng = rng_for(seed, suite, name)
            check_forward(report, name, b, exhaustive_sentences(b.signature, 2, 2, 3))
            check_forward(report, name, b, (random_sentence(rng, b.signature, 8, 6)
                                            for _ in range(samples)))
            check_backward(report, name, b, backward_sample(rng, b, samples))
            check_c_validity(report, name, b, rng, 2 * samples, samples)
    elif suite == "chen":
        for name in ("K2", "U2"):
            b = FIXTURES[name]
            rng = rng_for(seed, suite, name)
            check_chen(report, name, b, exhaustive_sentences(b.signature, 2, 2, 3), b.elements)
            check_chen(report, name, b, (random_sentence(rng, b.signature, 6, 5, max_universals=3)
                                         for _ in range(samples)), b.elements)
    elif suite == "collapse":
        for name in ("K2", "U2", "L1"):
            b = FIXTURES[name]
            nu = find_nu(b, 3)
            if nu is None or not (is_near_unanimity(nu) and is_polymorphism(b, nu)):
                report.notes.append(f"{name}: no verified 3-ary NU polymorphism found")
                report.discrepancies.append(Discrepancy("find_nu", name, b, PHSentence(),
                                                        "NU table", nu))
                continue
            report.notes.append(f"{name}: 3-ary NU polymorphism found (arity range searched: 3)")
            rng = rng_for(seed, suite, name)
            sentences = [random_sentence(rng, b.signature, 7, 5, max_universals=4,
                                         max_existentials=3) for _ in range(samples)]
            check_collapsibility(report, name, b, sentences, 2, b.elements)
        u2 = FIXTURES["U2"]
        check_collapse_structures(report, "U2", u2, exhaustive_sentences(u2.signature, 2, 2, 3),
                                  2, u2.elements)
    else:
        check_fo(report, exhaustive_pp(UNARY_PAIR, 4, 4))
        rng = rng_for(seed, suite)
        check_fo(report, (random_pp(rng, UNARY_PAIR, 6, 8) for _ in range(samples)))
    return report
