"""The noncompact exceptional automorphism group and its Lie algebra as
27x27 operators.

Group elements are linear maps g on the 27-dimensional algebra satisfying
g(X o Y) = gX o gY; algebra elements are derivations. Both are realized as
plain matrices acting on the coordinate vectors of `jordan`.

Closed-form constructions:

* exp_A(i, t, a): the one-parameter subgroup attached to a unit octonion a
  in slot i. Slot 1 rotates (trigonometric, compact direction), slots 2 and
  3 boost (hyperbolic). exp_A(3, t, 1) is the standard split torus.
* exp_N(level, x, p): the two-step nilpotent groups N^+ (level +1) and N^-
  (level -1), parameterized by an octonion x and an imaginary octonion p.
  Built on the adapted basis of `jordan.coord_basis` where the action is
  polynomial, then conjugated back to standard coordinates.
* sigma(i): diagonal involutions flipping the two octonion slots other
  than i; sigma(1) represents the nontrivial restricted Weyl element.
* d4_rotate: elements of the rank-four rotation subgroup fixing all three
  diagonal idempotents, constructed by a one-parameter rotation solve in
  the plane spanned by the source and target slot vectors.

Everything constructed here is machine-verified: GroupElement checks the
automorphism property on all basis pairs at construction, AlgebraElement
checks the derivation property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import jordan
from . import octonion as oct
from .config import group_tol
from .jordan import E1, E2, E3, E, F, JordanElement, P_MINUS, Qminus, Qplus

__all__ = [
    "VerificationError",
    "RotationError",
    "AlgebraElement",
    "GroupElement",
    "verify",
    "derivation_residual",
    "gen_A",
    "gen_G",
    "exp_A",
    "exp_N",
    "sigma",
    "expm",
    "bracket",
    "basis52",
    "killing",
    "ad_matrix",
    "d4_rotate",
    "m_basis",
    "stabilizer_check",
    "theta_eps_check",
    "ThetaEpsReport",
    "identity",
]


class VerificationError(ValueError):
    """A matrix failed the automorphism or derivation check."""


class RotationError(RuntimeError):
    """d4_rotate could not realize the requested slot rotation."""


_SLOTS = (slice(3, 11), slice(11, 19), slice(19, 27))
_CONJ = np.diag([1.0, -1, -1, -1, -1, -1, -1, -1])


def _vec8(x) -> np.ndarray:
    if isinstance(x, oct.Octonion):
        return x.coeffs
    if isinstance(x, (int, float, np.floating, np.integer)):
        v = np.zeros(8)
        v[0] = float(x)
        return v
    arr = np.asarray(x, dtype=float)
    if arr.shape != (8,):
        raise TypeError(f"cannot interpret {x!r} as an octonion")
    return arr


def verify(mat: np.ndarray) -> float:
    """Automorphism residual: max over basis pairs of
    |g(b_i o b_j) - g b_i o g b_j|, plus |gE - E|."""
    g = np.asarray(mat, dtype=float)
    if g.shape != (27, 27):
        raise ValueError(f"need a 27x27 matrix, got {g.shape}")
    J = jordan.mul_tensor()
    # left[i,j,k] = (g(b_i o b_j))_k
    left = np.tensordot(J, g, axes=([2], [1]))
    # right[i,j,k] = (g b_i o g b_j)_k
    t1 = np.tensordot(J, g, axes=([0], [0]))  # (b, k, i)
    right = np.tensordot(t1, g, axes=([0], [0]))  # (k, i, j)
    diff = left - np.moveaxis(right, 0, 2)
    pair_res = float(np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)).max())
    unit_res = float(np.linalg.norm(g @ E.vec - E.vec))
    return pair_res + unit_res


def derivation_residual(mat: np.ndarray) -> float:
    """Max over basis pairs of |D(b_i o b_j) - Db_i o b_j - b_i o Db_j|."""
    D = np.asarray(mat, dtype=float)
    if D.shape != (27, 27):
        raise ValueError(f"need a 27x27 matrix, got {D.shape}")
    J = jordan.mul_tensor()
    left = np.tensordot(J, D, axes=([2], [1]))  # (i, j, k)
    t1 = np.tensordot(J, D, axes=([0], [0]))  # (j, k, i)
    t2 = np.tensordot(J, D, axes=([1], [0]))  # (i, k, j)
    diff = left - np.moveaxis(t1, 2, 0) - np.moveaxis(t2, 2, 2).transpose(0, 2, 1)
    return float(np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)).max())


class AlgebraElement:
    """A derivation of the algebra, checked at construction."""

    __slots__ = ("mat",)

    def __init__(self, mat, check: bool = True):
        arr = np.asarray(mat, dtype=float)
        if arr.shape != (27, 27):
            raise ValueError(f"need a 27x27 matrix, got {arr.shape}")
        if check:
            res = derivation_residual(arr)
            scale = max(1.0, float(np.linalg.norm(arr)))
            if res > 1e-9 * scale:
                raise VerificationError(f"derivation residual {res:.3e} too large")
        self.mat = arr

    def apply(self, X: JordanElement) -> JordanElement:
        return JordanElement(self.mat @ X.vec)

    def __add__(self, other):
        return AlgebraElement(self.mat + other.mat, check=False)

    def __sub__(self, other):
        return AlgebraElement(self.mat - other.mat, check=False)

    def __neg__(self):
        return AlgebraElement(-self.mat, check=False)

    def __mul__(self, scalar):
        return AlgebraElement(self.mat * float(scalar), check=False)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __repr__(self):
        return f"AlgebraElement(norm={self.norm():.4g})"


class GroupElement:
    """An automorphism of the algebra; verified at construction."""

    __slots__ = ("mat", "residual")

    def __init__(self, mat, residual: float | None = None):
        arr = np.asarray(mat, dtype=float)
        if residual is None:
            residual = verify(arr)
        # product check is quadratic in the matrix, so the acceptance gate
        # scales with the square of the operator norm
        scale = max(1.0, float(np.linalg.norm(arr, 2)) ** 2)
        if residual >= group_tol() * scale:
            raise VerificationError(f"automorphism residual {residual:.3e} too large")
        arr = arr.copy()
        arr.setflags(write=False)
        self.mat = arr
        self.residual = float(residual)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(np.eye(27))

    def apply(self, X: JordanElement) -> JordanElement:
        return JordanElement(self.mat @ X.vec)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.mat @ other.mat)

    def inv(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.mat))

    def __repr__(self):
        return f"GroupElement(residual={self.residual:.2e})"


def identity() -> GroupElement:
    return GroupElement.identity()


def _cyclic(i: int) -> tuple[int, int, int]:
    # zero-based (i, i+1, i+2) mod 3
    if i not in (1, 2, 3):
        raise ValueError(f"slot index must be 1, 2 or 3, got {i}")
    i0 = i - 1
    return i0, (i0 + 1) % 3, (i0 + 2) % 3


def exp_A(i: int, t: float, a) -> GroupElement:
    """One-parameter subgroup in slot i with unit direction a.

    Slot 1 acts by trigonometric rotation, slots 2 and 3 by hyperbolic
    boost. The direction must have unit norm; it is not normalized here.
    """
    av = _vec8(a)
    if abs(av @ av - 1.0) > 1e-12:
        raise ValueError(f"direction must be unit, got |a|^2 = {av @ av}")
    return GroupElement(_exp_A_matrix(i, float(t), av))


def _exp_A_matrix(i: int, t: float, av: np.ndarray) -> np.ndarray:
    i0, i1, i2 = _cyclic(i)
    s0, s1, s2 = _SLOTS[i0], _SLOTS[i1], _SLOTS[i2]
    CL = _CONJ @ oct.left_mul_matrix(av)
    CR = _CONJ @ oct.right_mul_matrix(av)
    m = np.zeros((27, 27))
    if i == 1:
        c2, s2t = math.cos(2 * t), math.sin(2 * t)
        c, s = math.cos(t), math.sin(t)
        m[i1, s0] = s2t * av
        m[i2, s0] = -s2t * av
        m[s0, s0] = np.eye(8) - 2 * s * s * np.outer(av, av)
        m[s1, s2] = -s * CR
        m[s2, s1] = s * CL
    else:
        c2, s2t = math.cosh(2 * t), math.sinh(2 * t)
        c, s = math.cosh(t), math.sinh(t)
        # slot-coupling orientation differs between the two boost slots
        eps = -1.0 if i == 2 else 1.0
        m[i1, s0] = -s2t * av
        m[i2, s0] = s2t * av
        m[s0, s0] = np.eye(8) + 2 * s * s * np.outer(av, av)
        m[s1, s2] = eps * s * CR
        m[s2, s1] = eps * s * CL
    m[s1, s1] = c * np.eye(8)
    m[s2, s2] = c * np.eye(8)
    m[i0, i0] = 1.0
    m[i1, i1] = 0.5 * (1 + c2)
    m[i1, i2] = 0.5 * (1 - c2)
    m[i2, i1] = 0.5 * (1 - c2)
    m[i2, i2] = 0.5 * (1 + c2)
    m[s0, i1] = -0.5 * s2t * av
    m[s0, i2] = 0.5 * s2t * av
    return m


def gen_A(i: int, a) -> AlgebraElement:
    """Derivative at t = 0 of exp_A(i, t, a); defined for any a != 0."""
    av = _vec8(a)
    if float(av @ av) == 0.0:
        raise ValueError("direction a must be nonzero")
    i0, i1, i2 = _cyclic(i)
    s0, s1, s2 = _SLOTS[i0], _SLOTS[i1], _SLOTS[i2]
    CL = _CONJ @ oct.left_mul_matrix(av)
    CR = _CONJ @ oct.right_mul_matrix(av)
    m = np.zeros((27, 27))
    sign = 1.0 if i == 1 else -1.0  # sign of the (a|x_i) term in eta_{i+1}
    m[i1, s0] = 2 * sign * av
    m[i2, s0] = -2 * sign * av
    m[s0, i1] = -av
    m[s0, i2] = av
    if i == 1:
        m[s1, s2] = -CR
        m[s2, s1] = CL
    else:
        eps = -1.0 if i == 2 else 1.0
        m[s1, s2] = eps * CR
        m[s2, s1] = eps * CL
    return AlgebraElement(m)


def sigma(i: int) -> GroupElement:
    """Diagonal involution negating the two octonion slots other than i."""
    if i not in (1, 2, 3):
        raise ValueError(f"slot index must be 1, 2 or 3, got {i}")
    d = np.ones(27)
    for j in range(3):
        if j != i - 1:
            d[_SLOTS[j]] = -1.0
    return GroupElement(np.diag(d))


_SIGMA1_MAT: np.ndarray | None = None


def _sigma1() -> np.ndarray:
    global _SIGMA1_MAT
    if _SIGMA1_MAT is None:
        _SIGMA1_MAT = sigma(1).mat
    return _SIGMA1_MAT


# Nilpotent generators. The closed actions are polynomial on the adapted
# basis [ -E1+E2, P^-, E, E3, F(3,e1..e7), Qplus(e0..e7), Qminus(e0..e7) ];
# the matrix in standard coordinates is C(B^-1) where the columns of C are
# the images of the adapted basis vectors.


def _cols_to_matrix(images: list[JordanElement]) -> np.ndarray:
    _, Binv = jordan.coord_basis_matrix()
    C = np.column_stack([im.vec for im in images])
    return C @ Binv


def _imO(p) -> np.ndarray:
    pv = _vec8(p)
    if abs(pv[0]) > 1e-12:
        raise ValueError(f"parameter must be imaginary, got re = {pv[0]}")
    return pv


def _exp_G1_matrix(xv: np.ndarray) -> np.ndarray:
    x = oct.Octonion(xv)
    nx = x.norm_sq()
    e_m3 = E - 3 * E3  # combination recurring in the level-1 action
    images = [
        (E2 - E1)
        + Qminus(-1 * x)
        - nx * e_m3
        + Qplus(nx * x)
        + 0.5 * nx * nx * P_MINUS,
        P_MINUS.copy(),
        E.copy(),
        E3 + Qplus(x) + nx * P_MINUS,
    ]
    for j in range(1, 8):
        q = oct.Octonion.unit(j)
        images.append(F(3, q) + Qplus(-1 * (q * x)))
    for j in range(8):
        y = oct.Octonion.unit(j)
        pair = oct.inner(xv, y.coeffs)
        images.append(Qplus(y) + 2 * pair * P_MINUS)
    for j in range(8):
        y = oct.Octonion.unit(j)
        pair = oct.inner(xv, y.coeffs)
        imxy = (x * y.conj()).im()
        images.append(
            Qminus(y)
            + 2 * pair * e_m3
            + F(3, 2 * imxy)
            + Qplus(-3 * pair * x - imxy * x)
            - 2 * pair * nx * P_MINUS
        )
    return _cols_to_matrix(images)


def _exp_G2_matrix(pv: np.ndarray) -> np.ndarray:
    p = oct.Octonion(pv)
    np_ = p.norm_sq()
    images = [
        (E2 - E1) + F(3, -2 * p) + 2 * np_ * P_MINUS,
        P_MINUS.copy(),
        E.copy(),
        E3.copy(),
    ]
    for j in range(1, 8):
        q = oct.Octonion.unit(j)
        images.append(F(3, q) - 2 * oct.inner(pv, q.coeffs) * P_MINUS)
    for j in range(8):
        images.append(Qplus(oct.Octonion.unit(j)))
    for j in range(8):
        y = oct.Octonion.unit(j)
        images.append(Qminus(y) + Qplus(-2 * (p * y)))
    return _cols_to_matrix(images)


def exp_N(level: int, x, p) -> GroupElement:
    """Nilpotent group element exp(G_l1(x) + G_l2(p)), level = +1 or -1.

    p must be imaginary. The two parameter directions commute, so the
    element is the product of the two closed-form matrices; the negative
    level is the sigma(1)-conjugate of the positive one.
    """
    if level not in (1, -1):
        raise ValueError(f"level must be +1 or -1, got {level}")
    xv = _vec8(x)
    pv = _imO(p)
    m = _exp_G2_matrix(pv) @ _exp_G1_matrix(xv)
    if level == -1:
        s = _sigma1()
        m = s @ m @ s
    return GroupElement(m)


def _gen_G1_matrix(xv: np.ndarray) -> np.ndarray:
    x = oct.Octonion(xv)
    zero = JordanElement(np.zeros(27))
    e_m3 = E - 3 * E3
    images = [Qminus(-1 * x), zero, zero, Qplus(x)]
    for j in range(1, 8):
        q = oct.Octonion.unit(j)
        images.append(Qplus(-1 * (q * x)))
    for j in range(8):
        y = oct.Octonion.unit(j)
        images.append(2 * oct.inner(xv, y.coeffs) * P_MINUS)
    for j in range(8):
        y = oct.Octonion.unit(j)
        pair = oct.inner(xv, y.coeffs)
        imxy = (x * y.conj()).im()
        images.append(2 * pair * e_m3 + F(3, 2 * imxy))
    return _cols_to_matrix(images)


def _gen_G2_matrix(pv: np.ndarray) -> np.ndarray:
    p = oct.Octonion(pv)
    zero = JordanElement(np.zeros(27))
    images = [F(3, -2 * p), zero, zero, zero]
    for j in range(1, 8):
        q = oct.Octonion.unit(j)
        images.append(-2 * oct.inner(pv, q.coeffs) * P_MINUS)
    for j in range(8):
        images.append(zero)
    for j in range(8):
        y = oct.Octonion.unit(j)
        images.append(Qplus(-2 * (p * y)))
    return _cols_to_matrix(images)


def gen_G(level: int, param) -> AlgebraElement:
    """Nilpotent generator for level in {+1, +2, -1, -2}.

    Levels +-1 take any octonion, levels +-2 an imaginary one. Positive
    levels are the derivatives of the closed nilpotent actions; negative
    levels are their sigma(1)-conjugates.
    """
    if level not in (1, 2, -1, -2):
        raise ValueError(f"level must be one of +-1, +-2, got {level}")
    if abs(level) == 2:
        v = _imO(param)
        m = _gen_G2_matrix(v)
    else:
        v = _vec8(param)
        m = _gen_G1_matrix(v)
    if level < 0:
        s = _sigma1()
        m = s @ m @ s
    return AlgebraElement(m)




def bracket(phi: AlgebraElement, psi: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(phi.mat @ psi.mat - psi.mat @ phi.mat, check=False)


def expm(phi: AlgebraElement) -> GroupElement:
    """Matrix exponential by scaling and squaring, series tolerance 1e-13."""
    m = phi.mat
    norm = float(np.linalg.norm(m))
    res = derivation_residual(m)
    if res > 1e-9 * max(1.0, norm):
        raise VerificationError(f"derivation residual {res:.3e} too large to exponentiate")
    nsq = 0
    if norm > 0.5:
        nsq = max(0, int(math.ceil(math.log2(norm / 0.5))))
    small = m / (2.0**nsq)
    term = np.eye(27)
    total = np.eye(27)
    k = 1
    while True:
        term = term @ small / k
        total = total + term
        if float(np.linalg.norm(term)) < 1e-13:
            break
        k += 1
        if k > 60:
            raise RuntimeError("exponential series failed to converge")
    for _ in range(nsq):
        total = total @ total
    return GroupElement(total)


# Basis of the 52-dimensional derivation algebra: the 24 slot generators
# gen_A(i, e_j) plus 28 commutators [gen_A(3, e_j), gen_A(3, e_k)] spanning
# the rank-four rotation subalgebra. SVD rank is checked loudly.

_BASIS52_CACHE: list[AlgebraElement] | None = None
_BASIS52_FLAT: np.ndarray | None = None
_BASIS52_PINV: np.ndarray | None = None


def basis52() -> list[AlgebraElement]:
    global _BASIS52_CACHE, _BASIS52_FLAT, _BASIS52_PINV
    if _BASIS52_CACHE is None:
        out = []
        for i in (1, 2, 3):
            for j in range(8):
                out.append(gen_A(i, oct.Octonion.unit(j)))
        slot3 = [gen_A(3, oct.Octonion.unit(j)) for j in range(8)]
        for j in range(8):
            for k in range(j + 1, 8):
                out.append(bracket(slot3[j], slot3[k]))
        flat = np.stack([b.mat.ravel() for b in out])
        svals = np.linalg.svd(flat, compute_uv=False)
        rank = int(np.sum(svals > svals[0] * 1e-9))
        if rank != 52:
            raise RuntimeError(f"derivation basis rank {rank}, expected 52")
        _BASIS52_CACHE = out
        _BASIS52_FLAT = flat
        _BASIS52_PINV = np.linalg.pinv(flat.T)
    return _BASIS52_CACHE


def _coords52(mat: np.ndarray) -> np.ndarray:
    basis52()
    return _BASIS52_PINV @ mat.ravel()


def ad_matrix(phi: AlgebraElement) -> np.ndarray:
    """ad(phi) as a 52x52 matrix over the basis52 coordinates."""
    basis = basis52()
    cols = [_coords52(phi.mat @ b.mat - b.mat @ phi.mat) for b in basis]
    return np.column_stack(cols)


def killing(phi: AlgebraElement, psi: AlgebraElement) -> float:
    """Killing form trace(ad phi . ad psi) via structure constants."""
    return float(np.tensordot(ad_matrix(phi), ad_matrix(psi).T, axes=2))


def stabilizer_check(
    g: GroupElement, targets: list[JordanElement], tol: float | None = None
) -> bool:
    """True iff g fixes every target within the group tolerance."""
    if tol is None:
        tol = group_tol()
    for t in targets:
        if float(np.linalg.norm(g.mat @ t.vec - t.vec)) > tol * max(1.0, t.norm()):
            return False
    return True


def d4_rotate(j: int, u, v) -> GroupElement:
    """Element fixing E1, E2, E3 that maps F(j, u) to F(j, v).

    Requires norm_sq(u) = norm_sq(v) > 0. Solved by a single one-parameter
    rotation in the plane spanned by u and v inside slot j: the generator
    [gen_A(j,a), gen_A(j,b)] kills every diagonal idempotent and acts on
    slot j as the plane rotation generator of span(a, b).
    """
    uv = _vec8(u).copy()
    vv = _vec8(v).copy()
    nu = float(np.linalg.norm(uv))
    nv = float(np.linalg.norm(vv))
    if nu <= 0 or nv <= 0:
        raise ValueError("u and v must be nonzero")
    if abs(nu - nv) > 1e-9 * max(1.0, nu):
        raise ValueError(f"norm mismatch: |u| = {nu}, |v| = {nv}")
    uhat = uv / nu
    vhat = vv / nu
    gamma = float(uhat @ vhat)
    w = vhat - gamma * uhat
    w -= (w @ uhat) * uhat  # second orthogonalization pass
    wn = float(np.linalg.norm(w))
    if wn < 1e-13:
        if gamma > 0:
            return GroupElement.identity()
        # antipodal: rotate by pi in any plane through u
        k = int(np.argmin(np.abs(uhat)))
        b = np.zeros(8)
        b[k] = 1.0
        b -= (b @ uhat) * uhat
        bhat = b / np.linalg.norm(b)
        dlt = 0.0
    else:
        bhat = w / wn
        dlt = float(vhat @ bhat)
    gen = bracket(gen_A(j, uhat), gen_A(j, bhat)) * 0.25
    S = gen.mat[_SLOTS[j - 1], _SLOTS[j - 1]]
    su = S @ uhat
    s = float(bhat @ su)
    if abs(abs(s) - 1.0) > 1e-9 or np.linalg.norm(su - s * bhat) > 1e-9:
        raise RotationError("slot action of the rotation generator is not a plane rotation")
    if np.linalg.norm(S @ bhat + s * uhat) > 1e-9:
        raise RotationError("slot action of the rotation generator is not a plane rotation")
    # exp(theta*gen) maps uhat to cos(theta) uhat + s sin(theta) bhat
    theta = math.atan2(dlt * s, gamma)
    k = expm(gen * theta)
    got = k.mat @ F(j, uv).vec
    want = F(j, vv).vec
    if np.linalg.norm(got - want) > group_tol() * max(1.0, nu):
        raise RotationError("rotation solve failed to reach the target")
    return k


_M_BASIS_CACHE: list[AlgebraElement] | None = None


def m_basis() -> list[AlgebraElement]:
    """Numerical basis of the 21-dimensional subalgebra killing
    E1, E2, E3 and F(3, 1) (the Lie algebra of the little group M)."""
    global _M_BASIS_CACHE
    if _M_BASIS_CACHE is None:
        basis = basis52()
        H = gen_A(3, 1).mat
        # constraints: [phi, H] = 0 (centralizes the torus) and phi E1 = 0
        # (lies in the maximal compact subalgebra)
        rows = []
        for b in basis:
            comm = b.mat @ H - H @ b.mat
            rows.append(np.concatenate([comm.ravel(), b.mat @ E1.vec]))
        A = np.stack(rows).T  # (729 + 27, 52)
        U, svals, Vt = np.linalg.svd(A, full_matrices=True)
        null_dim = int(np.sum(svals < svals[0] * 1e-9)) + (52 - len(svals))
        if null_dim != 21:
            raise RuntimeError(f"centralizer dimension {null_dim}, expected 21")
        coords = Vt[-null_dim:]
        flat = np.stack([b.mat.ravel() for b in basis])
        out = []
        for c in coords:
            m = (c @ flat).reshape(27, 27)
            out.append(AlgebraElement(m / np.linalg.norm(m), check=False))
        _M_BASIS_CACHE = out
    return _M_BASIS_CACHE


@dataclass
class ThetaEpsReport:
    """Deviations of the twisted Cartan conjugation from its predicted
    action on each graded piece, plus the Weyl-element sign check."""

    dev_zero: float  # centralizer piece: the two conjugations agree
    dev_alpha: float  # single-root piece: conjugations differ by -1
    dev_2alpha: float  # double-root piece: conjugations agree
    dev_weyl: float  # sigma(1) negates the torus generator
    grading_residual: float  # eigenprojection reconstruction error

    @property
    def max_deviation(self) -> float:
        return max(
            self.dev_zero, self.dev_alpha, self.dev_2alpha, self.dev_weyl,
            self.grading_residual,
        )


def theta_eps_check() -> ThetaEpsReport:
    H = gen_A(3, 1).mat
    s1 = _sigma1()
    s2 = sigma(2).mat
    eigs = (-2.0, -1.0, 0.0, 1.0, 2.0)
    sign_for = {0.0: 1.0, 1.0: -1.0, -1.0: -1.0, 2.0: 1.0, -2.0: 1.0}
    devs = {0.0: 0.0, 1.0: 0.0, 2.0: 0.0}
    grad_res = 0.0
    for b in basis52():
        stack = [b.mat]
        for _ in range(4):
            x = stack[-1]
            stack.append(H @ x - x @ H)
        parts = {}
        for lam in eigs:
            coeff = np.array([1.0])
            denom = 1.0
            for mu in eigs:
                if mu == lam:
                    continue
                coeff = np.convolve(coeff, np.array([1.0, -mu]))
                denom *= lam - mu
            # coeff is highest-degree-first for the degree-4 polynomial
            part = np.zeros((27, 27))
            deg = len(coeff) - 1
            for idx, c in enumerate(coeff):
                part += c * stack[deg - idx]
            parts[lam] = part / denom
        recon = sum(parts.values()) - b.mat
        grad_res = max(grad_res, float(np.linalg.norm(recon)))
        for lam, part in parts.items():
            eps = sign_for[lam]
            lhs = s2 @ part @ s2
            rhs = eps * (s1 @ part @ s1)
            devs[abs(lam)] = max(devs[abs(lam)], float(np.linalg.norm(lhs - rhs)))
    dev_weyl = float(np.linalg.norm(s1 @ H @ s1 + H))
    return ThetaEpsReport(
        dev_zero=devs[0.0],
        dev_alpha=devs[1.0],
        dev_2alpha=devs[2.0],
        dev_weyl=dev_weyl,
        grading_residual=grad_res,
    )
