"""Projective quantum representations of mapping class groups, genus 1 and 2.

Genus 1: the color basis of the torus, ordered by spectral_color_order, with
t_a the diagonal twist matrix and t_b its s_matrix conjugate.

Genus 2: the dumbbell basis.  Basis labels are admissible colorings
(a, c, b) of the dumbbell spine (left loop a, bridge c, right loop b with
(a,a,c) and (b,b,c) admissible).  The catalogued twists act as:

    t_c2 = diag(mu_a),  t_c4 = diag(mu_b),  t_s = diag(mu_c)

(curves encircling a spine strand act by the twist eigenvalue of its
color), while t_c1, t_c5 are conjugates of diagonal matrices by the
one-holed-torus S-move of the corresponding handle and t_c3 is a
conjugate by the S-moves on both handles followed by the bridge
recoupling.  The S-move matrix is computed by expanding the clasped,
bridge-connected Hopf pairing into twist eigenvalues and tetrahedral
coefficients; correctness of the whole assembly is enforced by the braid
/ commutation / Hermitian relation suite rather than by construction.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import CycElem, CycRingOps, ResidueSpec, eta
from .linalg import FqSpan, ring_inverse
from .mcg import TwistWord, WordError
from .pmatrix import PMatrix
from .skein import (
    admissible,
    colors,
    spectral_color_order,
    quantum_dim,
    s_matrix,
    tet,
    theta,
    twist,
)


# -- bases ----------------------------------------------------------------


@lru_cache(maxsize=None)
def genus1_basis(p: int) -> tuple[int, ...]:
    return spectral_color_order(p)


@lru_cache(maxsize=None)
def genus2_basis(p: int) -> tuple[tuple[int, int, int], ...]:
    """Dumbbell colorings (a, c, b), lexicographic in natural color order."""
    out = []
    for a in colors(p):
        for c in colors(p):
            if not admissible(p, a, a, c):
                continue
            for b in colors(p):
                if admissible(p, b, b, c):
                    out.append((a, c, b))
    return tuple(out)


def rep_dim(genus: int, p: int) -> int:
    if genus == 1:
        return len(genus1_basis(p))
    if genus == 2:
        return len(genus2_basis(p))
    raise WordError(f"unsupported genus {genus}")


def vacuum_index(genus: int, p: int) -> int:
    if genus == 1:
        return genus1_basis(p).index(0)
    return genus2_basis(p).index((0, 0, 0))


# -- one-holed torus S-move and bridge recoupling ---------------------------


@lru_cache(maxsize=None)
def _holed_torus_s(p: int, c: int) -> tuple[tuple[CycElem, ...], ...]:
    """Operator matrix of the S-move on the one-holed torus with boundary
    color c, in the basis {loop color y : (y,y,c) admissible}.

    Entry (y, a): eta * Delta_y / theta(y,y,c) * (mu_y mu_a)^{-1} *
    sum_e mu_e (Delta_e / theta(y,a,e)) tet[y y c; a a e].
    Reduces to the closed-torus s_matrix at c = 0.
    """
    idx = [y for y in colors(p) if admissible(p, y, y, c)]
    h = eta(p)
    rows = []
    for y in idx:
        pref = h * quantum_dim(p, y) * theta(p, y, y, c).inv()
        row = []
        for a in idx:
            acc = CycElem.zero(p)
            for e in colors(p):
                if admissible(p, y, a, e):
                    acc = acc + twist(p, e) * quantum_dim(p, e) * theta(p, y, a, e).inv() * tet(
                        p, y, y, c, a, a, e
                    )
            row.append(pref * (twist(p, y) * twist(p, a)).inv() * acc)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _bridge_f_block(p: int, a: int, b: int) -> tuple[tuple[CycElem, ...], ...]:
    """Expansion of dumbbell vectors in the theta basis for fixed loop colors.

    Row f, column c: Delta_f * tet[a a c; b b f] / theta(a,b,f)^2, carrying
    the (a,a)(b,b) channel c to the bridge-recoupled channel f.
    """
    cs = [c for c in colors(p) if admissible(p, a, a, c) and admissible(p, b, b, c)]
    fs = [f for f in colors(p) if admissible(p, a, b, f)]
    rows = []
    for f in fs:
        th = theta(p, a, b, f).inv()
        rows.append(
            tuple(quantum_dim(p, f) * tet(p, a, a, c, b, b, f) * th * th for c in cs)
        )
    return tuple(rows)


def _block_indices_left(p: int):
    """Group dumbbell indices by (c, b); values are (a-list, positions)."""
    basis = genus2_basis(p)
    groups: dict[tuple[int, int], list[int]] = {}
    for pos, (a, c, b) in enumerate(basis):
        groups.setdefault((c, b), []).append(pos)
    return groups


def _block_indices_right(p: int):
    basis = genus2_basis(p)
    groups: dict[tuple[int, int], list[int]] = {}
    for pos, (a, c, b) in enumerate(basis):
        groups.setdefault((a, c), []).append(pos)
    return groups


def _embed_blocks(p: int, groups, block_of, invert: bool = False) -> PMatrix:
    """Assemble a block-diagonal PMatrix from per-group square blocks.

    Blocks are at most a few entries wide, so inverting blockwise keeps
    all ring inversions tiny.
    """
    n = rep_dim(2, p)
    zero = CycElem.zero(p)
    rows = [[zero] * n for _ in range(n)]
    ops = CycRingOps(p)
    for key, positions in groups.items():
        block = [list(r) for r in block_of(key, positions)]
        if invert:
            block = ring_inverse(block, ops)
        for bi, pi in enumerate(positions):
            for bj, pj in enumerate(positions):
                rows[pi][pj] = block[bi][bj]
    return PMatrix.from_rows(p, rows)


@lru_cache(maxsize=None)
def _left_s_operator(p: int, invert: bool = False) -> PMatrix:
    def block_of(key, positions):
        c, _b = key
        return _holed_torus_s(p, c)

    return _embed_blocks(p, _block_indices_left(p), block_of, invert)


@lru_cache(maxsize=None)
def _right_s_operator(p: int, invert: bool = False) -> PMatrix:
    def block_of(key, positions):
        _a, c = key
        return _holed_torus_s(p, c)

    return _embed_blocks(p, _block_indices_right(p), block_of, invert)


@lru_cache(maxsize=None)
def _bridge_f_matrix(p: int, invert: bool = False) -> PMatrix:
    """Coordinate change dumbbell -> theta, block-diagonal over (a, b).

    Theta-basis labels (a, f, b) are ordered per block by f ascending.
    """
    basis = genus2_basis(p)
    groups: dict[tuple[int, int], list[int]] = {}
    for pos, (a, c, b) in enumerate(basis):
        groups.setdefault((a, b), []).append(pos)

    def block_of(key, positions):
        a, b = key
        return _bridge_f_block(p, a, b)

    return _embed_blocks(p, groups, block_of, invert)


@lru_cache(maxsize=None)
def _theta_labels(p: int) -> tuple[tuple[int, int, int], ...]:
    """Label (a, f, b) occupying each coordinate slot after the bridge move."""
    basis = genus2_basis(p)
    groups: dict[tuple[int, int], list[int]] = {}
    for pos, (a, c, b) in enumerate(basis):
        groups.setdefault((a, b), []).append(pos)
    labels: list[tuple[int, int, int] | None] = [None] * len(basis)
    for (a, b), positions in groups.items():
        fs = [f for f in colors(p) if admissible(p, a, b, f)]
        for bi, f in enumerate(fs):
            labels[positions[bi]] = (a, f, b)
    return tuple(labels)


# -- twist generator matrices ----------------------------------------------


def _diag_over_basis(p: int, eigen_of) -> list[CycElem]:
    return [eigen_of(label) for label in genus2_basis(p)]


@lru_cache(maxsize=None)
def _twist_conjugators(genus: int, p: int, curve: str):
    """(Q, Q^{-1}, eigenvalues d): the twist is Q diag(d) Q^{-1}.

    Q = None means the twist is diagonal in the reference basis.
    Arbitrary powers are then exact: Q diag(d^k) Q^{-1}.  The conjugators
    are products of block-diagonal moves, inverted blockwise.
    """
    if genus == 1:
        diag = tuple(twist(p, n) for n in genus1_basis(p))
        if curve == "a":
            return None, None, diag
        if curve == "b":
            S = s_matrix(p)
            return S, S.inverse(), diag
        raise WordError(f"unknown genus-1 curve {curve!r}")
    basis = genus2_basis(p)
    if curve == "c2":
        return None, None, tuple(twist(p, a) for a, c, b in basis)
    if curve == "c4":
        return None, None, tuple(twist(p, b) for a, c, b in basis)
    if curve == "s":
        return None, None, tuple(twist(p, c) for a, c, b in basis)
    if curve == "c1":
        Q = _left_s_operator(p)
        return Q, _left_s_operator(p, True), tuple(twist(p, a) for a, c, b in basis)
    if curve == "c5":
        Q = _right_s_operator(p)
        return Q, _right_s_operator(p, True), tuple(twist(p, b) for a, c, b in basis)
    if curve == "c3":
        BL, BLi = _left_s_operator(p), _left_s_operator(p, True)
        BR, BRi = _right_s_operator(p), _right_s_operator(p, True)
        F, Fi = _bridge_f_matrix(p), _bridge_f_matrix(p, True)
        Q = BL * BR * Fi
        Qinv = F * BRi * BLi
        diag = tuple(twist(p, f) for a, f, b in _theta_labels(p))
        return Q, Qinv, diag
    raise WordError(f"unknown genus-2 curve {curve!r}")


def twist_power_matrix(genus: int, p: int, curve: str, k: int) -> PMatrix:
    """Exact matrix of t_curve^k; t^p is the exact identity."""
    Q, Qinv, diag = _twist_conjugators(genus, p, curve)
    d = [x ** k for x in diag] if k >= 0 else [x.inv() ** (-k) for x in diag]
    D = PMatrix.diagonal(p, d)
    if Q is None:
        return D
    return Q * D * Qinv


@lru_cache(maxsize=None)
def _letter_matrix(genus: int, p: int, curve: str, k: int) -> PMatrix:
    return twist_power_matrix(genus, p, curve, k)


def rho(word: TwistWord, p: int) -> PMatrix:
    """The quantum representation: product of twist-power matrices."""
    out = PMatrix.identity(p, rep_dim(word.genus, p))
    for curve, exp in word.letters:
        out = out * _letter_matrix(word.genus, p, curve, exp)
    return out


# -- mod-q reductions -------------------------------------------------------


def fq_mat_mul(A, B, q: int):
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def fq_identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def fq_is_scalar(M, q: int) -> bool:
    n = len(M)
    d = M[0][0]
    for i in range(n):
        for j in range(n):
            if i == j:
                if M[i][j] != d:
                    return False
            elif M[i][j] % q:
                return False
    return d % q != 0


def fq_proj_equal(A, B, q: int) -> bool:
    n = len(A)
    ref = None
    for i in range(n):
        for j in range(n):
            if (A[i][j] % q == 0) != (B[i][j] % q == 0):
                return False
            if ref is None and A[i][j] % q:
                ref = (i, j)
    if ref is None:
        return True
    a0, b0 = A[ref[0]][ref[1]], B[ref[0]][ref[1]]
    for i in range(n):
        for j in range(n):
            if (a0 * B[i][j] - b0 * A[i][j]) % q:
                return False
    return True


@lru_cache(maxsize=None)
def _letter_matrix_mod(genus: int, p: int, curve: str, k: int, r: ResidueSpec):
    """Mod-J matrix of t_curve^k via the reduced conjugator and eigenvalues."""
    Q, Qinv, diag = _twist_conjugators(genus, p, curve)
    q = r.q
    eig = [r.reduce(x) for x in diag]
    dk = [pow(e, k % (q - 1), q) for e in eig]
    n = len(eig)
    D = tuple(tuple(dk[i] if i == j else 0 for j in range(n)) for i in range(n))
    if Q is None:
        return D
    return fq_mat_mul(fq_mat_mul(Q.reduce(r), D, q), Qinv.reduce(r), q)


def rho_mod(word: TwistWord, p: int, r: ResidueSpec):
    """Entrywise residue reduction of rho(word); functorial on the nose."""
    n = rep_dim(word.genus, p)
    out = fq_identity(n)
    for curve, exp in word.letters:
        out = fq_mat_mul(out, _letter_matrix_mod(word.genus, p, curve, exp, r), r.q)
    return out


# -- Hermitian structure ----------------------------------------------------


@lru_cache(maxsize=None)
def hermitian_gram(genus: int, p: int) -> PMatrix:
    """Diagonal Gram matrix of the invariant Hermitian pairing.

    Genus 1: identity.  Genus 2: entry theta(a,a,c) theta(b,b,c) /
    (Delta_a Delta_b Delta_c), from splitting the doubled handlebody
    along its separating sphere.
    """
    if genus == 1:
        return PMatrix.identity(p, rep_dim(1, p))
    diag = []
    for a, c, b in genus2_basis(p):
        val = theta(p, a, a, c) * theta(p, b, b, c)
        den = quantum_dim(p, a) * quantum_dim(p, b) * quantum_dim(p, c)
        diag.append(val.exact_div(den))
    return PMatrix.diagonal(p, diag)


def hermitian_check(word: TwistWord, p: int) -> bool:
    """Whether rho(word)* G rho(word) = lambda G for some scalar lambda."""
    M = rho(word, p)
    G = hermitian_gram(word.genus, p)
    return (M.conj_transpose() * G * M).proj_equal(G)


# -- surjectivity evidence ---------------------------------------------------


def algebra_span_dim(words, genus: int, p: int, r: ResidueSpec) -> int:
    """Dimension over F_q of the matrix algebra spanned by rho_mod(words).

    d^2 certifies irreducibility of the generated subgroup (Burnside);
    reported as surjectivity evidence, never as proof.
    """
    span = FqSpan(r.q)
    for w in words:
        M = rho_mod(w, p, r)
        span.add([x for row in M for x in row])
    return span.dim


def fq_projective_order(M, q: int, cap: int = 10000) -> int | None:
    """Order of M in PGL_n(F_q), or None if it exceeds cap."""
    n = len(M)
    acc = M
    for k in range(1, cap + 1):
        if fq_is_scalar(acc, q):
            return k
        acc = fq_mat_mul(acc, M, q)
    return None
