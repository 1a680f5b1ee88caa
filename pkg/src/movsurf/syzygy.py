"""Moving planes and moving quadrics of a bidegree-(m,n) parametrization.

A parametrization phi = (a0,a1,a2,a3) of P1 x P1 -> P3 determines three
multiplication maps at the working bidegree (m-1, n-1):

    plane map    R_{m-1,n-1}^4  -> R_{2m-1,2n-1}   (A_i)  -> sum A_i a_i
    abc map      R_{m-1,n-1}^3  -> R_{2m-1,2n-1}   (A_i)  -> sum A_i a_i,  i<3
    quadric map  R_{m-1,n-1}^10 -> R_{3m-1,3n-1}   (A_ij) -> sum A_ij a_i a_j

Their kernels are the moving planes, the syzygies on (a0,a1,a2), and the
moving quadrics that follow phi.  Kernel vectors are canonicalized to coprime
integer coordinates with positive leading coordinate, so bases are
reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import RatMatrix, kernel_basis, rank
from .ring import (BihomPoly, coeff_vector, monomial_basis,
                   poly_from_vector)

# x_i x_j blocks of the quadric map, in this fixed order
PROD_ORDER = tuple((i, j) for i in range(4) for j in range(i, 4))


def x_monomial(i, j=None):
    """Exponent tuple of x_i (degree 1) or x_i*x_j (degree 2)."""
    e = [0, 0, 0, 0]
    e[i] += 1
    if j is not None:
        e[j] += 1
    return tuple(e)


@dataclass(frozen=True)
class Parametrization:
    m: int
    n: int
    a: tuple

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("bidegree (%d,%d) must be at least (1,1)"
                             % (self.m, self.n))
        if len(self.a) != 4:
            raise ValueError("a parametrization needs exactly 4 polynomials")
        object.__setattr__(self, "a", tuple(self.a))
        for i, f in enumerate(self.a):
            if f.bidegree != (self.m, self.n):
                raise ValueError(
                    "a%d has bidegree %s, expected (%d,%d)"
                    % (i, f.bidegree, self.m, self.n))

    @property
    def mn(self):
        return self.m * self.n

    @property
    def working_bidegree(self):
        return (self.m - 1, self.n - 1)

    def products(self):
        """The ten pairwise products a_i a_j, i <= j, in block order."""
        return [self.a[i] * self.a[j] for i, j in PROD_ORDER]

    def evaluate(self, point):
        return tuple(f.evaluate(point) for f in self.a)


@dataclass(frozen=True)
class MovingSurface:
    """A form of x-degree 1 or 2 whose x-coefficients vary with (s,u;t,v)."""

    xdegree: int
    coeffs: dict  # x-monomial tuple -> BihomPoly, all of one bidegree

    def bidegree(self):
        for f in self.coeffs.values():
            return f.bidegree
        raise ValueError("empty moving surface")

    def coefficient(self, xmono):
        for f in self.coeffs.values():
            zero = BihomPoly.zero(f.bidegree)
            break
        return self.coeffs.get(tuple(xmono), zero)

    def substitute(self, phi):
        """Plug the parametrization into the x-variables.

        For an x-degree-1 surface each x_i becomes a_i; for x-degree 2 each
        x_i x_j becomes a_i a_j.  A surface follows phi exactly when the
        result is the zero polynomial.
        """
        total = None
        for xmono, coeff in self.coeffs.items():
            prod = coeff
            for i, e in enumerate(xmono):
                for _ in range(e):
                    prod = prod * phi.a[i]
            total = prod if total is None else total + prod
        if total is None:
            raise ValueError("empty moving surface")
        return total

    def follows(self, phi):
        return self.substitute(phi).is_zero()

    def scale(self, c):
        return MovingSurface(self.xdegree,
                             {m: f.scale(c) for m, f in self.coeffs.items()})

    def add(self, other):
        coeffs = dict(self.coeffs)
        for m, f in other.coeffs.items():
            coeffs[m] = coeffs[m] + f if m in coeffs else f
        return MovingSurface(self.xdegree, coeffs)

    def x_multiple(self, i):
        """Multiply by the coordinate x_i, raising the x-degree by one."""
        out = {}
        for xmono, f in self.coeffs.items():
            e = list(xmono)
            e[i] += 1
            out[tuple(e)] = f
        return MovingSurface(self.xdegree + 1, out)


@dataclass
class SyzygyBasis:
    elements: list
    pivot_set: list = field(default=None)

    @property
    def dim(self):
        return len(self.elements)


def mult_matrix(generators, target):
    """Matrix of (A_g) -> sum A_g * g into bidegree `target`.

    Column blocks follow the generator order; inside a block, multiplier
    monomials run in canonical order.  Rows run over the canonical monomial
    basis of the target bidegree.
    """
    target = (int(target[0]), int(target[1]))
    row_basis = monomial_basis(target)
    row_index = {m: i for i, m in enumerate(row_basis)}
    columns = []
    for g in generators:
        d = (target[0] - g.bidegree[0], target[1] - g.bidegree[1])
        if d[0] < 0 or d[1] < 0:
            raise ValueError("bidegree underflow: generator %s into target %s"
                             % (g.bidegree, target))
        for mu in monomial_basis(d):
            col = [Fraction(0)] * len(row_basis)
            for mono, c in g.terms.items():
                m = (mono[0] + mu[0], mono[1] + mu[1],
                     mono[2] + mu[2], mono[3] + mu[3])
                col[row_index[m]] += c
            columns.append(col)
    return RatMatrix.from_columns(columns, len(row_basis))


def _vectors_to_surfaces(vectors, phi, xmonos):
    """Split flat kernel vectors into per-block coefficient polynomials."""
    wdeg = phi.working_bidegree
    basis = monomial_basis(wdeg)
    mn = len(basis)
    out = []
    for vec in vectors:
        coeffs = {}
        for b, xm in enumerate(xmonos):
            block = vec[b * mn:(b + 1) * mn]
            coeffs[xm] = poly_from_vector(block, basis, wdeg)
        out.append(MovingSurface(xdegree=sum(xmonos[0]), coeffs=coeffs))
    return out


def plane_map_matrix(phi):
    return mult_matrix(phi.a, (2 * phi.m - 1, 2 * phi.n - 1))


def quadric_map_matrix(phi):
    return mult_matrix(phi.products(), (3 * phi.m - 1, 3 * phi.n - 1))


def abc_map_matrix(phi):
    return mult_matrix(phi.a[:3], (2 * phi.m - 1, 2 * phi.n - 1))


def moving_planes(phi):
    """Basis of the moving planes of bidegree (m-1, n-1) following phi."""
    kb = kernel_basis(plane_map_matrix(phi))
    xmonos = [x_monomial(i) for i in range(4)]
    return SyzygyBasis(_vectors_to_surfaces(kb.vectors, phi, xmonos))


def moving_quadrics(phi):
    """Basis of the moving quadrics of bidegree (m-1, n-1) following phi."""
    kb = kernel_basis(quadric_map_matrix(phi))
    xmonos = [x_monomial(i, j) for i, j in PROD_ORDER]
    return SyzygyBasis(_vectors_to_surfaces(kb.vectors, phi, xmonos))


def syz_dim_abc(phi):
    """Dimension of the bidegree-(m-1,n-1) syzygies on a0, a1, a2 alone."""
    A = abc_map_matrix(phi)
    return A.cols - rank(A)


def surface_to_vector(surface, phi):
    """Flat coordinate vector of a moving surface, inverse of the kernel split."""
    wdeg = phi.working_bidegree
    basis = monomial_basis(wdeg)
    if surface.xdegree == 1:
        xmonos = [x_monomial(i) for i in range(4)]
    else:
        xmonos = [x_monomial(i, j) for i, j in PROD_ORDER]
    zero = BihomPoly.zero(wdeg)
    vec = []
    for xm in xmonos:
        vec.extend(coeff_vector(surface.coeffs.get(xm, zero), basis))
    return vec
