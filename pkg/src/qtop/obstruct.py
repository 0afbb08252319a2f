"""Embedding obstructions from quantum invariants.

The mechanism: a compression body kills every boundary-basis coordinate
whose compressed-handle color is nonzero, so the invariant vector of a
bounded manifold N = C u_w H is the compression projection of
rho(w) applied to the handlebody vector.  If that vector vanishes mod a
maximal ideal J with residue field F_q while a closed target M has
RT_p(M) nonzero mod J, the FKB ideal of N is contained in J but that of
M is not, and N cannot embed in M.

Soundness axiom recorded in every certificate: closed invariants of
manifolds containing N factor through the pairing with N's boundary
vector, so vector vanishing mod J forces I_p(N) into J.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import CycElem, CycIdeal, ResidueSpec, eta, residue_primes
from .manifolds import (
    BoundedHeegaard,
    DescError,
    ManifoldDesc,
    is_closed,
    rt_closed,
)
from .mcg import TwistWord, empty_word, word_in_subgroup
from .rep import (
    fq_mat_mul,
    genus1_basis,
    genus2_basis,
    rep_dim,
    rho,
    rho_mod,
    vacuum_index,
)

SOUNDNESS_AXIOM = (
    "vector vanishing mod J implies I_p(N) <= J: closed invariants of "
    "manifolds containing N factor through the pairing with N's vector"
)


@dataclass(frozen=True)
class BoundaryVector:
    p: int
    boundary_genus: int
    coords: tuple[CycElem, ...]

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "boundaryGenus": self.boundary_genus,
            "coords": [x.to_json() for x in self.coords],
        }


@lru_cache(maxsize=None)
def surviving_indices(p: int, boundary_genus: int) -> tuple[int, ...]:
    """Dumbbell coordinates that survive the compression projection.

    Compressing the right handle kills every (a, c, b) with b != 0
    (admissibility then forces c = 0); compressing both handles keeps
    only the vacuum coordinate.
    """
    basis = genus2_basis(p)
    if boundary_genus == 1:
        order = []
        for n in genus1_basis(p):
            order.append(basis.index((n, 0, 0)))
        return tuple(order)
    if boundary_genus == 0:
        return (basis.index((0, 0, 0)),)
    raise DescError("boundary genus must be 0 or 1")


def boundary_vector(desc: BoundedHeegaard, p: int) -> BoundaryVector:
    """Compression projection of rho(word) applied to the handlebody vector.

    Each compressed handle contributes a factor eta^{-1} in the TQFT
    normalization (so capping the result reproduces the closed Heegaard
    value exactly).  Boundary genus 1 coordinates are indexed by the
    genus-1 basis order.
    """
    vac = vacuum_index(2, p)
    M = rho(desc.word, p)
    scale = eta(p).inv() ** (2 - desc.boundary_genus)
    column = [M.entries[i][vac] for i in range(rep_dim(2, p))]
    coords = tuple(
        scale * column[i] for i in surviving_indices(p, desc.boundary_genus)
    )
    return BoundaryVector(p, desc.boundary_genus, coords)


def boundary_vector_mod(desc: BoundedHeegaard, p: int, r: ResidueSpec) -> tuple[int, ...]:
    vac = vacuum_index(2, p)
    M = rho_mod(desc.word, p, r)
    scale = r.reduce(eta(p).inv() ** (2 - desc.boundary_genus))
    column = [M[i][vac] for i in range(rep_dim(2, p))]
    return tuple(
        scale * column[i] % r.q for i in surviving_indices(p, desc.boundary_genus)
    )


def vanishes_mod(v: BoundaryVector, r: ResidueSpec) -> bool:
    """True iff every coordinate reduces to 0 in F_q."""
    if v.p != r.p:
        raise DescError("boundary vector and residue spec use different p")
    return all(r.reduce(x) == 0 for x in v.coords)


def very_good_probe(desc: ManifoldDesc, p: int) -> str:
    """Exact zero test of the closed invariant: 'nonzero' or 'zero'."""
    return "zero" if rt_closed(desc, p).is_zero() else "nonzero"


def fkb_ideal_closed(desc: ManifoldDesc, p: int) -> CycIdeal:
    """Ideal generated by the closed invariant (unit phases are harmless)."""
    return CycIdeal.from_generators([rt_closed(desc, p)])


@dataclass(frozen=True)
class InnerIdealReport:
    ideal: CycIdeal
    budget: int
    stabilized: bool  # equal to the ideal at budget - 1


def fkb_ideal_inner(desc: BoundedHeegaard, p: int, budget: int) -> InnerIdealReport:
    """Inner approximation of the FKB ideal of a genus-1-boundary piece.

    Generators are the closed invariants of solid-torus fillings glued by
    all genus-1 twist words up to the length cap; monotone nondecreasing
    in the budget.  Never used for obstruction verdicts.
    """
    if desc.boundary_genus != 1:
        raise DescError("inner ideals are computed for genus-1 boundaries")
    if budget < 1:
        raise DescError("budget must be >= 1")
    bv = boundary_vector(desc, p)
    values = [_filling_value(bv, w, p) for w in _genus1_words_upto(budget)]
    prev_values = [_filling_value(bv, w, p) for w in _genus1_words_upto(budget - 1)]
    ideal = CycIdeal.from_generators(values)
    prev = CycIdeal.from_generators(prev_values) if prev_values else None
    stabilized = prev is not None and prev == ideal
    return InnerIdealReport(ideal, budget, stabilized)


def _genus1_words_upto(length: int):
    """All genus-1 words of letter length <= length (free enumeration)."""
    out = [empty_word(1)]
    frontier = [empty_word(1)]
    letters = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for c, e in letters:
                nw = w * TwistWord(1, ((c, e),))
                nxt.append(nw)
        out.extend(nxt)
        frontier = nxt
    seen = set()
    unique = []
    for w in out:
        if w.letters not in seen:
            seen.add(w.letters)
            unique.append(w)
    return unique


def _filling_value(bv: BoundaryVector, w: TwistWord, p: int) -> CycElem:
    """Closed invariant of the filling glued by w: <bv, rho(w) e_vac>."""
    M = rho(w, p)
    vac = vacuum_index(1, p)
    col = [M.entries[i][vac] for i in range(rep_dim(1, p))]
    acc = CycElem.zero(p)
    for x, y in zip(bv.coords, col):
        acc = acc + x * y
    return acc


# -- obstruction reports -----------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    target: ManifoldDesc          # M, the ambient candidate
    candidate: ManifoldDesc       # N, the piece that may not embed
    p: int
    verdict: str                  # OBSTRUCTED | NO_OBSTRUCTION_FOUND
    q_used: int | None
    certificate: tuple[dict, ...]  # one entry per residue prime tried

    def to_json(self) -> dict:
        from .manifolds import desc_to_json

        return {
            "schemaVersion": 1,
            "target": desc_to_json(self.target),
            "candidate": desc_to_json(self.candidate),
            "p": self.p,
            "q": self.q_used,
            "verdict": self.verdict,
            "certificate": list(self.certificate),
            "soundness": SOUNDNESS_AXIOM,
        }


def _candidate_residues(desc: ManifoldDesc, p: int, r: ResidueSpec) -> list[int]:
    if isinstance(desc, BoundedHeegaard):
        return list(boundary_vector_mod(desc, p, r))
    if is_closed(desc):
        return [r.reduce(rt_closed(desc, p))]
    raise DescError(f"cannot form a vector for {desc!r}")


def obstruct_embedding(
    candidate: ManifoldDesc,
    target: ManifoldDesc,
    p: int,
    q_candidates: list[int] | None = None,
) -> ObstructionReport:
    """Soundly obstruct an embedding of `candidate` into `target`.

    For each residue prime q = 1 mod 4p: OBSTRUCTED at the first q where
    the target's invariant has nonzero residue while every coordinate of
    the candidate's vector vanishes.  The verdict is a pure function of
    the recorded residues.
    """
    if not is_closed(target):
        raise DescError("the ambient manifold must be closed")
    qs = q_candidates if q_candidates is not None else residue_primes(p)
    if not qs:
        raise DescError("need at least one residue prime")
    rt_target = rt_closed(target, p)
    cert = []
    verdict, q_used = "NO_OBSTRUCTION_FOUND", None
    for q in qs:
        r = ResidueSpec.for_primes(p, q)
        m_res = r.reduce(rt_target)
        n_vec = _candidate_residues(candidate, p, r)
        obstructed = m_res != 0 and all(x == 0 for x in n_vec)
        cert.append(
            {"q": q, "root": r.root, "mResidue": m_res, "nVector": n_vec, "obstructed": obstructed}
        )
        if obstructed and verdict == "NO_OBSTRUCTION_FOUND":
            verdict, q_used = "OBSTRUCTED", q
            break
    return ObstructionReport(target, candidate, p, verdict, q_used, tuple(cert))


def rederive_report(report: ObstructionReport) -> bool:
    """Recompute every recorded residue from scratch and check the verdict."""
    rt_target = rt_closed(report.target, report.p)
    for entry in report.certificate:
        r = ResidueSpec.for_primes(report.p, entry["q"])
        if r.root != entry["root"]:
            return False
        if r.reduce(rt_target) != entry["mResidue"]:
            return False
        if _candidate_residues(report.candidate, report.p, r) != list(entry["nVector"]):
            return False
        again = entry["mResidue"] != 0 and all(x == 0 for x in entry["nVector"])
        if again != entry["obstructed"]:
            return False
    expect = "OBSTRUCTED" if any(e["obstructed"] for e in report.certificate) else "NO_OBSTRUCTION_FOUND"
    return expect == report.verdict


# -- randomized search for vanishing gluings ---------------------------------


@dataclass(frozen=True)
class TwistSearchResult:
    found: bool
    word: TwistWord | None        # the subgroup element f (None if not found)
    full_word: TwistWord | None   # base word composed with f
    certificate: str | None
    samples: int
    distinct_images: int


def twist_search(
    desc: BoundedHeegaard,
    p: int,
    r: ResidueSpec,
    budget: int = 2000,
    seed: int = 0,
    n: int = 3,
    k: int = 1,
    walk_length: int = 48,
    generator_count: int = 6,
) -> TwistSearchResult:
    """Search Gamma_k I cap T_n for f with vanishing compressed vector mod J.

    Samples products of certified subgroup generators; each sample is a
    fresh walk of `walk_length` steps.  Deterministic in (seed, budget).
    """
    rng = random.Random(seed)
    base = desc.word
    kill = [
        i
        for i in range(rep_dim(2, p))
        if i not in surviving_indices(p, desc.boundary_genus)
    ]
    keep = surviving_indices(p, desc.boundary_genus)
    vac = vacuum_index(2, p)
    base_mod = rho_mod(base, p, r)

    gens = []
    certs = []
    for j in range(generator_count):
        cw = word_in_subgroup(n, k, seed * 1009 + j + 1)
        gens.append(cw.word)
        certs.append(cw.certificate)
    gen_mats = [rho_mod(g, p, r) for g in gens]
    gen_mats += [rho_mod(g.inverse(), p, r) for g in gens]
    gen_index = list(range(len(gen_mats)))

    def vector_of(mat):
        col = [mat[i][vac] for i in range(len(mat))]
        return tuple(col[i] for i in keep)

    # empty word first: degenerate setups succeed immediately
    if all(x == 0 for x in vector_of(base_mod)):
        return TwistSearchResult(True, empty_word(2), base, "1", 0, 1)

    images = set()
    for sample in range(1, budget + 1):
        picks = [rng.choice(gen_index) for _ in range(walk_length)]
        acc = base_mod
        for i in picks:
            acc = fq_mat_mul(acc, gen_mats[i], r.q)
        images.add(acc)
        if all(x == 0 for x in vector_of(acc)):
            f = empty_word(2)
            for i in picks:
                g = gens[i] if i < len(gens) else gens[i - len(gens)].inverse()
                f = f * g
            cert_terms = []
            for i in picks:
                if i < len(gens):
                    cert_terms.append(certs[i])
                else:
                    cert_terms.append(f"({certs[i - len(gens)]})^-1")
            certificate = " . ".join(cert_terms)
            return TwistSearchResult(True, f, base * f, certificate, sample, len(images))
    return TwistSearchResult(False, None, None, None, budget, len(images))
