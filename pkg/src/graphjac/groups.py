"""Finitely generated abelian groups as subquotients of Z^n, and their maps.

A group is ``A / B`` with ``B ⊆ A ⊆ Z^n``; ``A`` is stored by a basis (the
numerator) and ``B`` by generators (the relations).  Elements carry
Smith-normal-form coordinates, so equality is coordinate equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import NotASubgroup, NotInSubgroup, NotWellDefined
from .linalg import IntMatrix, SnfSolver, as_matrix, hnf_rows, kernel_basis, lattice_basis, rank, snf


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class GroupElement:
    parent: "FgAbGroup"
    free_coords: tuple
    torsion_coords: tuple

    def __add__(self, other):
        self._same(other)
        return self.parent._normalize_slots(
            tuple(a + b for a, b in zip(self.free_coords, other.free_coords)),
            tuple(a + b for a, b in zip(self.torsion_coords, other.torsion_coords)),
        )

    def __neg__(self):
        return self.parent._normalize_slots(tuple(-a for a in self.free_coords), tuple(-a for a in self.torsion_coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return self.parent._normalize_slots(tuple(k * a for a in self.free_coords), tuple(k * a for a in self.torsion_coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.parent is other.parent
            and self.free_coords == other.free_coords
            and self.torsion_coords == other.torsion_coords
        )

    def __hash__(self):
        return hash((id(self.parent), self.free_coords, self.torsion_coords))

    def _same(self, other):
        if self.parent is not other.parent:
            raise ValueError("elements of different groups")

    def is_zero(self) -> bool:
        return not any(self.free_coords) and not any(self.torsion_coords)

    def order(self) -> Optional[int]:
        """Order of the element, ``None`` when it is infinite."""
        if any(self.free_coords):
            return None
        n = 1
        for x, d in zip(self.torsion_coords, self.parent.invariant_factors):
            n = _lcm(n, d // gcd(x, d))
        return n

    def representative(self) -> tuple:
        return self.parent.representative(self)

    def __repr__(self):
        return f"GroupElement(free={list(self.free_coords)}, torsion={list(self.torsion_coords)})"


class FgAbGroup:
    """The subquotient ``span(numerator) / span(relations)`` of ``Z^ambient_rank``.

    Build through :func:`subquotient`.
    """

    def __init__(self, ambient_rank: int, numerator, relations, name: str = ""):
        numerator = as_matrix(numerator)
        relations = as_matrix(relations)
        if numerator.rows != ambient_rank or relations.rows != ambient_rank:
            raise ValueError("matrix heights must equal the ambient rank")
        if rank(numerator) < numerator.cols:
            numerator = lattice_basis(numerator)
        self.name = name
        self.ambient_rank = ambient_rank
        self.numerator_basis = numerator
        self.relation_images = relations
        self._num_solver = SnfSolver(numerator)

        coords = []
        for j in range(relations.cols):
            c = self._num_solver.solve(relations.column(j))
            if c is None:
                raise NotASubgroup(f"relation column {j} is not in the numerator lattice")
            coords.append(c)
        r = numerator.cols
        self.relation_coords = IntMatrix.from_columns(coords, r)
        res = snf(self.relation_coords)
        diag = res.diagonal
        k = res.rank
        self._u = res.u
        self._u_inv = res.u_inv
        self._torsion_slots = [i for i in range(k) if diag[i] > 1]
        self._free_slots = list(range(k, r))
        self.invariant_factors = tuple(diag[i] for i in self._torsion_slots)
        self.free_rank = len(self._free_slots)

    # -- basic data

    @property
    def generator_count(self) -> int:
        return self.numerator_basis.cols

    def invariants(self):
        return (self.free_rank, self.invariant_factors)

    def is_isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariants() == other.invariants()

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def __str__(self):
        return format_group(self.free_rank, self.invariant_factors)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"<FgAbGroup {label}{self}>"

    # -- coordinates

    def coords(self, ambient: Sequence[int]) -> tuple:
        """Coordinates of an ambient vector on the numerator basis."""
        ambient = tuple(ambient)
        if len(ambient) != self.ambient_rank:
            raise ValueError("vector length differs from the ambient rank")
        c = self._num_solver.solve(ambient)
        if c is None:
            raise NotInSubgroup(f"{list(ambient)} is not in the numerator lattice")
        return c

    def contains(self, ambient: Sequence[int]) -> bool:
        return self._num_solver.solve(tuple(ambient)) is not None

    def from_coords(self, c: Sequence[int]) -> GroupElement:
        y = self._u @ tuple(c)
        return self._normalize_slots(tuple(y[i] for i in self._free_slots), tuple(y[i] for i in self._torsion_slots))

    def _normalize_slots(self, free, torsion) -> GroupElement:
        return GroupElement(self, tuple(free), tuple(x % d for x, d in zip(torsion, self.invariant_factors)))

    def project(self, ambient: Sequence[int]) -> GroupElement:
        return self.from_coords(self.coords(ambient))

    def element(self, free=None, torsion=None) -> GroupElement:
        free = tuple(free or (0,) * self.free_rank)
        torsion = tuple(torsion or (0,) * len(self.invariant_factors))
        if len(free) != self.free_rank or len(torsion) != len(self.invariant_factors):
            raise ValueError("wrong number of coordinates")
        return self._normalize_slots(free, torsion)

    def zero(self) -> GroupElement:
        return self.element()

    def element_coords(self, x: GroupElement) -> tuple:
        """Numerator coordinates of a representative of ``x``."""
        if x.parent is not self:
            raise ValueError("element of another group")
        y = [0] * self.generator_count
        for slot, val in zip(self._free_slots, x.free_coords):
            y[slot] = val
        for slot, val in zip(self._torsion_slots, x.torsion_coords):
            y[slot] = val
        return self._u_inv @ y

    def representative(self, x: GroupElement) -> tuple:
        return self.numerator_basis @ self.element_coords(x)

    def generators(self) -> list:
        """Normal-form generators: one per torsion factor, then one per free slot."""
        out = []
        for i in range(len(self.invariant_factors)):
            t = [0] * len(self.invariant_factors)
            t[i] = 1
            out.append(self.element(torsion=t))
        for i in range(self.free_rank):
            f = [0] * self.free_rank
            f[i] = 1
            out.append(self.element(free=f))
        return out

    def numerator_generators(self) -> list:
        return [self.from_coords(tuple(int(i == j) for i in range(self.generator_count))) for j in range(self.generator_count)]

    def elements(self):
        """Enumerate a finite group (small groups only)."""
        if self.free_rank:
            raise ValueError("infinite group")

        def rec(i, acc):
            if i == len(self.invariant_factors):
                yield self.element(torsion=tuple(acc))
                return
            for x in range(self.invariant_factors[i]):
                yield from rec(i + 1, acc + [x])

        yield from rec(0, [])

    # -- sublattices in numerator coordinates

    def _relation_lattice_rows(self):
        return self.relation_coords.columns()

    def subgroup_lattice(self, sub: "FgAbGroup") -> IntMatrix:
        """Lattice (numerator coordinates, relations included) of a subgroup."""
        if sub.ambient_rank != self.ambient_rank:
            raise ValueError("different ambient lattices")
        cols = [self.coords(c) for c in sub.numerator_basis.columns()]
        cols += list(self.relation_coords.columns())
        return IntMatrix.from_columns(hnf_rows(cols, self.generator_count), self.generator_count)

    def subgroup(self, ambient_generators) -> "FgAbGroup":
        """Subgroup generated by ambient vectors, with this group's relations."""
        gens = as_matrix(ambient_generators)
        coords = [self.coords(c) for c in gens.columns()] + list(self.relation_coords.columns())
        basis = IntMatrix.from_columns(hnf_rows(coords, self.generator_count), self.generator_count)
        return FgAbGroup(self.ambient_rank, self.numerator_basis @ basis, self.relation_images)

    def same_subgroup(self, a: "FgAbGroup", b: "FgAbGroup") -> bool:
        return self.subgroup_lattice(a) == self.subgroup_lattice(b)


def format_group(free_rank: int, invariant_factors) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts += [f"Z/{d}" for d in invariant_factors]
    return " ⊕ ".join(parts) if parts else "0"


def subquotient(ambient_rank: int, numerator, denominator, name: str = "") -> FgAbGroup:
    """The group ``span(numerator) / span(denominator)`` inside ``Z^ambient_rank``.

    Raises:
        NotASubgroup: a denominator column is outside the numerator lattice.
    """
    numerator = as_matrix(numerator) if not isinstance(numerator, IntMatrix) else numerator
    denominator = as_matrix(denominator) if not isinstance(denominator, IntMatrix) else denominator
    return FgAbGroup(ambient_rank, numerator, denominator, name=name)


def free_group(n: int, name: str = "") -> FgAbGroup:
    return subquotient(n, IntMatrix.identity(n), IntMatrix.zeros(n, 0), name)


def cyclic_group(d: int) -> FgAbGroup:
    return subquotient(1, IntMatrix.identity(1), IntMatrix.from_rows([[d]]))


def project(g: FgAbGroup, ambient: Sequence[int]) -> GroupElement:
    return g.project(ambient)


class GroupHom:
    """A verified homomorphism, stored by the images of numerator generators.

    ``images`` has one column per numerator basis vector of the source,
    written in target ambient coordinates.  ``ambient_matrix`` is kept
    when the hom came from an ambient linear map.
    """

    def __init__(self, source: FgAbGroup, target: FgAbGroup, images, ambient_matrix: Optional[IntMatrix] = None, name: str = ""):
        images = as_matrix(images)
        if images.rows != target.ambient_rank or images.cols != source.generator_count:
            raise ValueError(f"image matrix has shape {images.shape}, expected {(target.ambient_rank, source.generator_count)}")
        self.source = source
        self.target = target
        self.images = images
        self.ambient_matrix = ambient_matrix
        self.name = name
        cols = []
        for j, col in enumerate(images.columns()):
            c = target._num_solver.solve(col)
            if c is None:
                raise NotWellDefined(f"generator {j} maps outside the target numerator", witness=j, kind="numerator")
            cols.append(c)
        self.coord_matrix = IntMatrix.from_columns(cols, target.generator_count)
        for j, rel in enumerate(source.relation_coords.columns()):
            if not target.from_coords(self.coord_matrix @ rel).is_zero():
                raise NotWellDefined(f"relation {j} does not map to zero", witness=j, kind="relation")

    # -- evaluation

    def __call__(self, x):
        if isinstance(x, GroupElement):
            c = self.source.element_coords(x)
        else:
            c = self.source.coords(x)
        return self.target.from_coords(self.coord_matrix @ c)

    def generator_images(self) -> list:
        return [self.target.from_coords(c) for c in self.coord_matrix.columns()]

    # -- algebra

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``."""
        if inner.target is not self.source:
            raise ValueError("maps are not composable")
        amb = None
        if self.ambient_matrix is not None and inner.ambient_matrix is not None:
            amb = self.ambient_matrix @ inner.ambient_matrix
        return GroupHom(inner.source, self.target, self.images @ inner.coord_matrix, amb)

    def __matmul__(self, inner: "GroupHom") -> "GroupHom":
        return self.compose(inner)

    def scaled(self, k: int) -> "GroupHom":
        amb = None if self.ambient_matrix is None else self.ambient_matrix.scale(k)
        return GroupHom(self.source, self.target, self.images.scale(k), amb)

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if other.source is not self.source or other.target is not self.target:
            raise ValueError("maps with different source or target")
        return GroupHom(self.source, self.target, self.images + other.images)

    def equals(self, other: "GroupHom") -> bool:
        if other.source is not self.source or other.target is not self.target:
            return False
        return self.generator_images() == other.generator_images()

    def difference_witness(self, other: "GroupHom"):
        """First numerator generator on which the two maps differ, or ``None``."""
        for j, (a, b) in enumerate(zip(self.generator_images(), other.generator_images())):
            if a != b:
                return j
        return None

    # -- kernels and images, in numerator coordinates

    def _kernel_lattice(self) -> IntMatrix:
        r = self.source.generator_count
        rel = self.target.relation_coords
        stacked = IntMatrix.hstack(self.coord_matrix, rel)
        ker = kernel_basis(stacked)
        cols = [col[:r] for col in ker.columns()]
        return IntMatrix.from_columns(hnf_rows(cols, r), r)

    def _image_lattice(self) -> IntMatrix:
        cols = list(self.coord_matrix.columns()) + list(self.target.relation_coords.columns())
        r = self.target.generator_count
        return IntMatrix.from_columns(hnf_rows(cols, r), r)

    def kernel(self) -> FgAbGroup:
        lat = self._kernel_lattice()
        src = self.source
        return FgAbGroup(src.ambient_rank, src.numerator_basis @ lat, src.relation_images)

    def image(self) -> FgAbGroup:
        lat = self._image_lattice()
        tgt = self.target
        return FgAbGroup(tgt.ambient_rank, tgt.numerator_basis @ lat, tgt.relation_images)

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self._image_lattice() == IntMatrix.identity(self.target.generator_count)

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def preimage_coords(self, target_coords: Sequence[int]) -> Optional[tuple]:
        """Source numerator coordinates mapping onto the given target class."""
        stacked = IntMatrix.hstack(self.coord_matrix, self.target.relation_coords)
        sol = SnfSolver(stacked).solve(tuple(target_coords))
        return None if sol is None else sol[: self.source.generator_count]

    def lift(self, y: GroupElement) -> Optional[GroupElement]:
        c = self.preimage_coords(self.target.element_coords(y))
        return None if c is None else self.source.from_coords(c)

    def inverse(self) -> "GroupHom":
        if not self.is_isomorphism():
            raise NotWellDefined("map is not an isomorphism")
        stacked = SnfSolver(IntMatrix.hstack(self.coord_matrix, self.target.relation_coords))
        r = self.source.generator_count
        cols = []
        for j in range(self.target.generator_count):
            e = tuple(int(i == j) for i in range(self.target.generator_count))
            cols.append(self.source.numerator_basis @ stacked.solve(e)[:r])
        return GroupHom(self.target, self.source, IntMatrix.from_columns(cols, self.source.ambient_rank))

    def __repr__(self):
        return f"<GroupHom {self.source} -> {self.target}>"


def induced_hom(src: FgAbGroup, dst: FgAbGroup, ambient_matrix, name: str = "") -> GroupHom:
    """Hom induced by an ambient integer matrix, after checking it is well defined.

    Raises:
        NotWellDefined: a numerator generator or relation lands in the wrong place.
    """
    ambient_matrix = as_matrix(ambient_matrix)
    if ambient_matrix.shape != (dst.ambient_rank, src.ambient_rank):
        raise ValueError(f"ambient matrix shape {ambient_matrix.shape} does not match {(dst.ambient_rank, src.ambient_rank)}")
    return GroupHom(src, dst, ambient_matrix @ src.numerator_basis, ambient_matrix, name)


def hom_from_images(src: FgAbGroup, dst: FgAbGroup, images, name: str = "") -> GroupHom:
    """Hom given by target-ambient images of the source numerator basis."""
    return GroupHom(src, dst, images, None, name)


def identity_hom(g: FgAbGroup) -> GroupHom:
    return induced_hom(g, g, IntMatrix.identity(g.ambient_rank))


def zero_hom(src: FgAbGroup, dst: FgAbGroup) -> GroupHom:
    return GroupHom(src, dst, IntMatrix.zeros(dst.ambient_rank, src.generator_count))


def is_exact(f: GroupHom, g: GroupHom) -> bool:
    """``ker g == im f`` inside the middle group."""
    if f.target is not g.source:
        raise ValueError("maps are not composable")
    return g._kernel_lattice() == f._image_lattice()


def preimage(h: GroupHom, sub: FgAbGroup) -> FgAbGroup:
    """Preimage under ``h`` of a subgroup of ``h.target`` (same ambient and relations)."""
    tgt = h.target
    s = tgt.subgroup_lattice(sub)
    r = h.source.generator_count
    ker = kernel_basis(IntMatrix.hstack(h.coord_matrix, s))
    cols = [col[:r] for col in ker.columns()]
    lat = IntMatrix.from_columns(hnf_rows(cols, r), r)
    src = h.source
    return FgAbGroup(src.ambient_rank, src.numerator_basis @ lat, src.relation_images)


def restrict_hom(h: GroupHom, sub: FgAbGroup) -> GroupHom:
    """Restriction of ``h`` to a subgroup of its source (same ambient)."""
    cols = [h.images @ h.source.coords(c) for c in sub.numerator_basis.columns()]
    return GroupHom(sub, h.target, IntMatrix.from_columns(cols, h.target.ambient_rank))


def fraction_mod_one(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)
