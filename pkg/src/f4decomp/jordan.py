"""A 27-dimensional real exceptional Jordan algebra with split-signature pairing.

Elements are Hermitian 3x3 octonionic matrices in a twisted real form: the
two off-diagonal slots coupling to the first diagonal entry carry a factor
sqrt(-1), which flips the sign of their contribution to the pairing and to
the determinant. An element is stored as 27 real coordinates

    vec[0:3]   xi_1, xi_2, xi_3   (diagonal)
    vec[3:11]  x_1                (octonion slot opposite xi_1)
    vec[11:19] x_2                (octonion slot opposite xi_2, twisted)
    vec[19:27] x_3                (octonion slot opposite xi_3, twisted)

and the matrix realization is never materialized. The pairing is

    (X|Y) = sum_i xi_i eta_i + 2 (x_1|y_1) - 2 (x_2|y_2) - 2 (x_3|y_3),

the determinant is the usual octonionic 3x3 formula with the twisted slots
entering with flipped sign, and the Jordan product is recovered from the
quadratic adjoint (the "cross square") by polarization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import octonion as oct
from .config import member_tol
from .octonion import Octonion

__all__ = [
    "JordanElement",
    "h1",
    "diag_unit",
    "F",
    "Qplus",
    "Qminus",
    "E1",
    "E2",
    "E3",
    "E",
    "P_PLUS",
    "P_MINUS",
    "P13_MINUS",
    "SIGMA_P_MINUS",
    "trace",
    "inner",
    "cross_square",
    "cross",
    "det",
    "det_cubic",
    "jordan_mul",
    "mul_tensor",
    "CoordView",
    "coords",
    "OrbitMembership",
    "classify",
    "ray_rep",
    "s15_from",
    "s15_to",
    "basis27",
    "coord_basis",
    "coord_basis_matrix",
]

# pairing weights per coordinate: diagonal 1, first slot +2, twisted slots -2
_WEIGHTS = np.concatenate([np.ones(3), 2 * np.ones(8), -2 * np.ones(8), -2 * np.ones(8)])
_WEIGHTS.setflags(write=False)


class JordanElement:
    """Element of the algebra, a thin wrapper over 27 real coordinates."""

    __slots__ = ("vec",)

    def __init__(self, vec):
        arr = np.asarray(vec, dtype=float)
        if arr.shape != (27,):
            raise ValueError(f"need 27 coordinates, got shape {arr.shape}")
        self.vec = arr

    @property
    def xi(self) -> np.ndarray:
        return self.vec[:3]

    def slot(self, i: int) -> np.ndarray:
        """Raw 8-vector of octonion slot i (1, 2 or 3)."""
        if i not in (1, 2, 3):
            raise ValueError(f"slot index must be 1, 2 or 3, got {i}")
        return self.vec[3 + 8 * (i - 1) : 11 + 8 * (i - 1)]

    def x(self, i: int) -> Octonion:
        return Octonion(self.slot(i).copy())

    def copy(self) -> "JordanElement":
        return JordanElement(self.vec.copy())

    def norm(self) -> float:
        """Euclidean norm of the coordinate vector (used for tolerances)."""
        return float(np.linalg.norm(self.vec))

    def __add__(self, other):
        return JordanElement(self.vec + other.vec)

    def __sub__(self, other):
        return JordanElement(self.vec - other.vec)

    def __neg__(self):
        return JordanElement(-self.vec)

    def __mul__(self, scalar):
        return JordanElement(self.vec * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return JordanElement(self.vec / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, JordanElement):
            return NotImplemented
        return bool(np.array_equal(self.vec, other.vec))

    def __hash__(self):
        return hash(self.vec.tobytes())

    def __repr__(self):
        xs = ", ".join(oct.format_octonion(self.slot(i)) for i in (1, 2, 3))
        return f"h1({self.vec[0]:.6g}, {self.vec[1]:.6g}, {self.vec[2]:.6g}; {xs})"


def _slot_coeffs(x) -> np.ndarray:
    if isinstance(x, Octonion):
        return x.coeffs
    if isinstance(x, (int, float, np.floating, np.integer)):
        v = np.zeros(8)
        v[0] = float(x)
        return v
    arr = np.asarray(x, dtype=float)
    if arr.shape != (8,):
        raise TypeError(f"cannot interpret {x!r} as an octonion slot")
    return arr


def h1(xi1: float, xi2: float, xi3: float, x1=0.0, x2=0.0, x3=0.0) -> JordanElement:
    vec = np.empty(27)
    vec[0], vec[1], vec[2] = float(xi1), float(xi2), float(xi3)
    vec[3:11] = _slot_coeffs(x1)
    vec[11:19] = _slot_coeffs(x2)
    vec[19:27] = _slot_coeffs(x3)
    return JordanElement(vec)


def diag_unit(i: int) -> JordanElement:
    xi = [0.0, 0.0, 0.0]
    xi[i - 1] = 1.0
    return h1(*xi)


def F(i: int, a) -> JordanElement:
    """Element with octonion a in slot i and everything else zero."""
    vec = np.zeros(27)
    vec[3 + 8 * (i - 1) : 11 + 8 * (i - 1)] = _slot_coeffs(a)
    return JordanElement(vec)


def Qplus(x) -> JordanElement:
    """h1(0,0,0; x, conj(x), 0)."""
    c = _slot_coeffs(x)
    return h1(0, 0, 0, c, oct.conj_vec(c), 0)


def Qminus(x) -> JordanElement:
    """h1(0,0,0; x, -conj(x), 0)."""
    c = _slot_coeffs(x)
    return h1(0, 0, 0, c, -oct.conj_vec(c), 0)


E1 = diag_unit(1)
E2 = diag_unit(2)
E3 = diag_unit(3)
E = h1(1, 1, 1)

P_PLUS = h1(1, -1, 0, 0, 0, 1)
P_MINUS = h1(-1, 1, 0, 0, 0, 1)
P13_MINUS = h1(-1, 0, 1, 0, 1, 0)
SIGMA_P_MINUS = h1(-1, 1, 0, 0, 0, -1)


def trace(X: JordanElement) -> float:
    return float(X.vec[0] + X.vec[1] + X.vec[2])


def inner(X: JordanElement, Y: JordanElement) -> float:
    return float(X.vec @ (_WEIGHTS * Y.vec))


def cross_square(X: JordanElement) -> JordanElement:
    """Quadratic adjoint: the unique quadratic map with X^x2 = cross(X, X).

    Vanishes exactly on the rank-one cone; its diagonal entries are the 2x2
    cofactors of the twisted matrix realization.
    """
    xi1, xi2, xi3 = X.vec[:3]
    x1, x2, x3 = X.vec[3:11], X.vec[11:19], X.vec[19:27]
    n1 = float(x1 @ x1)
    n2 = float(x2 @ x2)
    n3 = float(x3 @ x3)
    out = np.empty(27)
    out[0] = xi2 * xi3 - n1
    out[1] = xi3 * xi1 + n2
    out[2] = xi1 * xi2 + n3
    out[3:11] = -oct.conj_vec(oct.mul_vec(x2, x3)) - xi1 * x1
    out[11:19] = oct.conj_vec(oct.mul_vec(x3, x1)) - xi2 * x2
    out[19:27] = oct.conj_vec(oct.mul_vec(x1, x2)) - xi3 * x3
    return JordanElement(out)


def cross(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Symmetric bilinear form polarizing cross_square; cross(X,X) = X^x2."""
    s = cross_square(JordanElement(X.vec + Y.vec))
    return JordanElement(0.5 * (s.vec - cross_square(X).vec - cross_square(Y).vec))


def det(X: JordanElement) -> float:
    """Cubic norm via the adjoint pairing (X|X^x2)/3."""
    return inner(X, cross_square(X)) / 3.0


def det_cubic(X: JordanElement) -> float:
    """Cubic norm written out; must agree with det to rounding."""
    xi1, xi2, xi3 = X.vec[:3]
    x1, x2, x3 = X.vec[3:11], X.vec[11:19], X.vec[19:27]
    triple = float(oct.mul_vec(oct.mul_vec(x1, x2), x3)[0])
    return (
        xi1 * xi2 * xi3
        - 2.0 * triple
        - xi1 * float(x1 @ x1)
        + xi2 * float(x2 @ x2)
        + xi3 * float(x3 @ x3)
    )


def jordan_mul(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Jordan product, recovered from the cross form and traces."""
    tx, ty = trace(X), trace(Y)
    c = cross(X, Y)
    vec = c.vec + 0.5 * (tx * Y.vec + ty * X.vec - (tx * ty - inner(X, Y)) * E.vec)
    return JordanElement(vec)


_MUL_TENSOR_CACHE: np.ndarray | None = None


def mul_tensor() -> np.ndarray:
    """(27,27,27) tensor J with (e_i o e_j)_k = J[i,j,k] over basis27."""
    global _MUL_TENSOR_CACHE
    if _MUL_TENSOR_CACHE is None:
        basis = basis27()
        J = np.empty((27, 27, 27))
        for i in range(27):
            for j in range(i, 27):
                prod = jordan_mul(basis[i], basis[j]).vec
                J[i, j] = prod
                J[j, i] = prod
        J.setflags(write=False)
        _MUL_TENSOR_CACHE = J
    return _MUL_TENSOR_CACHE


def basis27() -> list[JordanElement]:
    """Standard coordinate basis: unit vectors of the 27-dim representation."""
    out = []
    for k in range(27):
        v = np.zeros(27)
        v[k] = 1.0
        out.append(JordanElement(v))
    return out


# Adapted coordinates: every element decomposes uniquely as
#   X = r(-E1+E2) + s P^- + u E + v E3 + F(3, p) + Qplus(x) + Qminus(y)
# with p purely imaginary. These coordinates diagonalize the nilpotent
# one-parameter subgroups used by the factorizations.


@dataclass
class CoordView:
    r: float
    s: float
    u: float
    v: float
    p: Octonion  # imaginary part only
    x: Octonion
    y: Octonion

    def to_element(self) -> JordanElement:
        base = (
            self.r * (E2 - E1).vec
            + self.s * P_MINUS.vec
            + self.u * E.vec
            + self.v * E3.vec
        )
        elem = JordanElement(base)
        elem = elem + F(3, self.p) + Qplus(self.x) + Qminus(self.y)
        return elem


def coords(X: JordanElement) -> CoordView:
    xi1, xi2, xi3 = X.vec[:3]
    x1, x2, x3 = X.vec[3:11], X.vec[11:19], X.vec[19:27]
    s = float(x3[0])
    p = x3.copy()
    p[0] = 0.0
    x = 0.5 * (x1 + oct.conj_vec(x2))
    y = 0.5 * (x1 - oct.conj_vec(x2))
    u = 0.5 * (xi1 + xi2)
    r = 0.5 * (xi2 - xi1) - s
    v = xi3 - u
    return CoordView(r=r, s=s, u=u, v=v, p=Octonion(p), x=Octonion(x), y=Octonion(y))


def coord_basis() -> list[JordanElement]:
    """Basis adapted to the nilpotent action, in the fixed order
    [-E1+E2, P^-, E, E3, F(3,e1..e7), Qplus(e0..e7), Qminus(e0..e7)]."""
    out = [E2 - E1, P_MINUS.copy(), E.copy(), E3.copy()]
    for j in range(1, 8):
        out.append(F(3, Octonion.unit(j)))
    for j in range(8):
        out.append(Qplus(Octonion.unit(j)))
    for j in range(8):
        out.append(Qminus(Octonion.unit(j)))
    return out


_COORD_MATRIX_CACHE: tuple[np.ndarray, np.ndarray] | None = None


def coord_basis_matrix() -> tuple[np.ndarray, np.ndarray]:
    """(B, Binv): columns of B are coord_basis() in standard coordinates."""
    global _COORD_MATRIX_CACHE
    if _COORD_MATRIX_CACHE is None:
        B = np.column_stack([b.vec for b in coord_basis()])
        Binv = np.linalg.inv(B)
        B.setflags(write=False)
        Binv.setflags(write=False)
        _COORD_MATRIX_CACHE = (B, Binv)
    return _COORD_MATRIX_CACHE


@dataclass
class OrbitMembership:
    in_R1: bool  # rank-one cone minus the origin
    in_H: bool  # trace-one sheet through E1 (compact orbit)
    in_Hp: bool  # trace-one sheet through E2
    in_N1p: bool  # trace-zero cone, positive pairing with E1
    in_N1m: bool  # trace-zero cone, negative pairing with E1


def classify(X: JordanElement) -> OrbitMembership:
    """Orbit membership with scale-normalized tolerances.

    The quadratic test uses tol * max(1, |X|^2), linear tests
    tol * max(1, |X|). The two trace-one sheets are separated by the
    pairing with E1, which is >= 1 on one and <= 0 on the other, so the
    midpoint 1/2 is a robust separator.
    """
    tol = member_tol()
    nrm = X.norm()
    qtol = tol * max(1.0, nrm * nrm)
    ltol = tol * max(1.0, nrm)
    rank_one = cross_square(X).norm() <= qtol and nrm > ltol
    tr = trace(X)
    pair1 = inner(X, E1)
    trace_one = abs(tr - 1.0) <= ltol
    trace_zero = abs(tr) <= ltol
    return OrbitMembership(
        in_R1=rank_one,
        in_H=rank_one and trace_one and pair1 >= 0.5,
        in_Hp=rank_one and trace_one and pair1 < 0.5,
        in_N1p=rank_one and trace_zero and pair1 > ltol,
        in_N1m=rank_one and trace_zero and pair1 < -ltol,
    )


def ray_rep(X: JordanElement) -> JordanElement:
    """Scale X on its ray so that (X|E1) = -1."""
    pair = inner(X, E1)
    if not pair < 0:
        raise ValueError(f"ray normalization needs (X|E1) < 0, got {pair}")
    return X / (-pair)


def s15_from(x, y) -> JordanElement:
    """Point of the trace-zero negative cone attached to (x, y) on the
    15-sphere (x|x) + (y|y) = 1; returns the representative with
    (X|E1) = -1."""
    xo = Octonion(_slot_coeffs(x))
    yo = Octonion(_slot_coeffs(y))
    nx, ny = xo.norm_sq(), yo.norm_sq()
    if abs(nx + ny - 1.0) > 1e-12 * max(1.0, nx + ny):
        raise ValueError(f"(x|x)+(y|y) = {nx + ny}, need 1")
    x1 = oct.conj_vec(oct.mul_vec(xo.coeffs, yo.coeffs))
    return h1(-1.0, ny, nx, x1, xo.coeffs, yo.coeffs)


def s15_to(X: JordanElement) -> tuple[Octonion, Octonion]:
    """Inverse of s15_from on rays of the trace-zero negative cone."""
    R = ray_rep(X)
    return R.x(2), R.x(3)
