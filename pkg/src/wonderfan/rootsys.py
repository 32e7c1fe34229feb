"""Root systems and Weyl groups for split adjoint (possibly reducible) groups.

Conventions, fixed once for the whole package:

* the character lattice is the root lattice, so every character is an
  integer vector over the simple-root basis (adjoint convention);
* the Cartan matrix entry ``C[i][j]`` is the pairing of the i-th simple
  root with the j-th simple coroot, and the simple reflection s_j sends a
  vector c to ``c - (sum_i c_i C[i][j]) e_j``;
* roots are indexed with all positive roots first (sorted by height, then
  lexicographically), and the negative of the root at index i sits at
  index ``i + n_pos``;
* a Weyl word ``(j1, ..., jk)`` is the product s_{j1}···s_{jk}, applied to
  a vector rightmost factor first.

Reducible systems are orthogonal products assembled block-wise; every
group-theoretic computation factors through the components.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class RootSystemError(ValueError):
    """Invalid family/rank data."""


class WeylCapError(RuntimeError):
    """Weyl group enumeration exceeds the configured cap."""


DEFAULT_WEYL_CAP = 51840

_CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def _cartan_block(family: str, rank: int) -> list[list[int]]:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if family not in ok:
        raise RootSystemError(f"unknown family {family!r}")
    if not ok[family]:
        raise RootSystemError(f"invalid rank {rank} for family {family}")

    c = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def edge(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if family in ("A", "B", "C"):
        for i in range(rank - 1):
            edge(i, i + 1)
        if family == "B" and rank >= 2:
            edge(rank - 2, rank - 1, -2, -1)  # last simple root short
        if family == "C" and rank >= 2:
            edge(rank - 2, rank - 1, -1, -2)  # last simple root long
    elif family == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 3, rank - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5)]:
            edge(i, j)
        for i in range(5, rank - 1):
            edge(i, i + 1)
        edge(1, 3)
    elif family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    elif family == "G":
        edge(0, 1, -1, -3)  # first simple root short
    return c


_SPEC_RE = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_system_spec(spec: str) -> list[tuple[str, int]]:
    """Parse a spec string like "A2" or "B2xA1" (case-insensitive)."""
    parts = [p for p in spec.strip().split("x") if p]
    if not parts:
        raise RootSystemError(f"empty root-system spec {spec!r}")
    out = []
    for part in parts:
        m = _SPEC_RE.match(part.strip())
        if not m:
            raise RootSystemError(f"bad root-system component {part!r}")
        out.append((m.group(1).upper(), int(m.group(2))))
    return out


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system data; build with :func:`build_root_system`."""

    components: tuple[tuple[str, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]  # positives first, then their negatives

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    @property
    def n_pos(self) -> int:
        return len(self.roots) // 2

    @property
    def spec(self) -> str:
        return "x".join(f"{fam}{rk}" for fam, rk in self.components)

    def simple_root(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_positive_index(self, idx: int) -> bool:
        return idx < self.n_pos

    def negate_index(self, idx: int) -> int:
        n = self.n_pos
        return idx - n if idx >= n else idx + n

    def index_of(self, vec: Sequence[int]) -> int:
        try:
            return self._index[tuple(vec)]
        except KeyError:
            raise RootSystemError(f"{tuple(vec)} is not a root") from None

    @property
    def _index(self) -> dict[tuple[int, ...], int]:
        # lazy cache on the frozen instance
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {r: i for i, r in enumerate(self.roots)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    @property
    def simple_indices(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_simple_cache")
        if cached is None:
            cached = tuple(self.index_of(self.simple_root(i)) for i in range(self.rank))
            object.__setattr__(self, "_simple_cache", cached)
        return cached

    def coroot_pairing(self, vec: Sequence[int], j: int) -> int:
        """Pairing of the character vec with the j-th simple coroot."""
        return sum(vec[i] * self.cartan[i][j] for i in range(self.rank))

    def reflect(self, vec: Sequence[int], j: int) -> tuple[int, ...]:
        """Simple reflection s_j applied to a character vector."""
        k = self.coroot_pairing(vec, j)
        out = list(vec)
        out[j] -= k
        return tuple(out)

    def support(self, vec: Sequence[int]) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(vec) if c != 0)

    def component_of(self, i: int) -> int:
        """Component id of the i-th simple root."""
        lo = 0
        for cid, (_, rk) in enumerate(self.components):
            if i < lo + rk:
                return cid
            lo += rk
        raise IndexError(i)

    def component_simples(self, cid: int) -> range:
        lo = sum(rk for _, rk in self.components[:cid])
        return range(lo, lo + self.components[cid][1])

    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """W-invariant symmetrized pairing matrix on the root lattice."""
        cached = self.__dict__.get("_gram_cache")
        if cached is not None:
            return cached
        # root-length normalizations d_i with d_j C[i][j] symmetric
        d: list[Fraction] = [Fraction(0)] * self.rank
        for cid in range(len(self.components)):
            idxs = list(self.component_simples(cid))
            d[idxs[0]] = Fraction(1)
            todo = [idxs[0]]
            while todo:
                i = todo.pop()
                for j in idxs:
                    if d[j] == 0 and self.cartan[i][j] != 0:
                        # d_j / d_i = C[j][i] / C[i][j]
                        d[j] = d[i] * Fraction(self.cartan[j][i], self.cartan[i][j])
                        todo.append(j)
        g = tuple(
            tuple(self.cartan[i][j] * d[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        object.__setattr__(self, "_gram_cache", g)
        return g


def build_root_system(spec: Iterable[tuple[str, int]] | str) -> RootSystem:
    """Build a root system from (family, rank) pairs or a spec string.

    Reducible input yields the orthogonal product, with the component root
    vectors embedded in disjoint coordinate blocks.
    """
    if isinstance(spec, str):
        spec = parse_system_spec(spec)
    comps = tuple((fam.upper(), int(rk)) for fam, rk in spec)
    if not comps:
        raise RootSystemError("at least one component required")

    blocks = [_cartan_block(fam, rk) for fam, rk in comps]
    rank = sum(rk for _, rk in comps)
    cartan = [[0] * rank for _ in range(rank)]
    lo = 0
    for block in blocks:
        r = len(block)
        for i in range(r):
            for j in range(r):
                cartan[lo + i][lo + j] = block[i][j]
        lo += r
    cartan_t = tuple(tuple(row) for row in cartan)

    rs0 = RootSystem(components=comps, cartan=cartan_t, roots=())
    seen: set[tuple[int, ...]] = set()
    frontier = [rs0.simple_root(i) for i in range(rank)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for vec in frontier:
            for j in range(rank):
                img = rs0.reflect(vec, j)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt

    positives = sorted(
        (r for r in seen if all(c >= 0 for c in r)), key=lambda r: (sum(r), r)
    )
    roots = tuple(positives) + tuple(tuple(-c for c in r) for r in positives)
    rs = RootSystem(components=comps, cartan=cartan_t, roots=roots)

    expected = sum(_CLASSICAL_COUNTS[fam](rk) for fam, rk in comps)
    if len(roots) != expected:  # pragma: no cover - internal consistency
        raise RootSystemError(
            f"root enumeration produced {len(roots)} roots, expected {expected}"
        )
    return rs


# ---------------------------------------------------------------------------
# Weyl elements and the Weyl group


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: a word in simple reflections plus the induced
    permutation of the root index set (the word need not be reduced)."""

    word: tuple[int, ...]
    perm: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def __str__(self) -> str:
        return "e" if not self.word else ".".join(str(j) for j in self.word)


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(word=(), perm=tuple(range(rs.n_roots)))


def simple_reflection(rs: RootSystem, j: int) -> WeylElement:
    if not 0 <= j < rs.rank:
        raise RootSystemError(f"no simple reflection with index {j}")
    perm = tuple(rs.index_of(rs.reflect(r, j)) for r in rs.roots)
    return WeylElement(word=(j,), perm=perm)


def compose(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    """The product a·b (apply b first)."""
    perm = tuple(a.perm[b.perm[i]] for i in range(rs.n_roots))
    return WeylElement(word=a.word + b.word, perm=perm)


def inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    inv = [0] * rs.n_roots
    for i, p in enumerate(w.perm):
        inv[p] = i
    return WeylElement(word=tuple(reversed(w.word)), perm=tuple(inv))


def element_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    w = identity_element(rs)
    for j in word:
        w = compose(rs, w, simple_reflection(rs, j))
    return w


def act_index(w: WeylElement, idx: int) -> int:
    return w.perm[idx]


def act_vector(rs: RootSystem, w: WeylElement, vec: Sequence[int]) -> tuple[int, ...]:
    """Linear action of w on a character vector (root-lattice coordinates)."""
    out = [0] * rs.rank
    for i, c in enumerate(vec):
        if c:
            img = rs.roots[w.perm[rs.simple_indices[i]]]
            for k in range(rs.rank):
                out[k] += c * img[k]
    return tuple(out)


def length(rs: RootSystem, w: WeylElement) -> int:
    """Coxeter length: the number of positive roots sent negative."""
    n = rs.n_pos
    return sum(1 for i in range(n) if w.perm[i] >= n)


def reduced_word(rs: RootSystem, w: WeylElement) -> tuple[int, ...]:
    """A reduced word for w (smallest right descent stripped first)."""
    n = rs.n_pos
    letters = []
    cur = w
    while True:
        descent = next(
            (j for j in range(rs.rank) if cur.perm[rs.simple_indices[j]] >= n),
            None,
        )
        if descent is None:
            break
        letters.append(descent)
        cur = compose(rs, cur, simple_reflection(rs, descent))
    return tuple(reversed(letters))


def canonicalize(rs: RootSystem, w: WeylElement) -> WeylElement:
    """The same group element carrying its canonical reduced word."""
    return WeylElement(word=reduced_word(rs, w), perm=w.perm)


@dataclass(frozen=True)
class WeylGroup:
    rs: RootSystem
    elements: tuple[WeylElement, ...]
    longest: WeylElement

    @property
    def order(self) -> int:
        return len(self.elements)

    def find(self, w: WeylElement) -> WeylElement:
        """Canonical stored element with the same action."""
        cached = self.__dict__.get("_by_perm")
        if cached is None:
            cached = {e.perm: e for e in self.elements}
            object.__setattr__(self, "_by_perm", cached)
        return cached[w.perm]


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> WeylGroup:
    """Enumerate W by breadth-first closure under the simple reflections.

    Raises :class:`WeylCapError` if more than ``cap`` elements appear; the
    longest element comes out of the same sweep (the unique element whose
    every simple-root image is negative).
    """
    gens = [simple_reflection(rs, j) for j in range(rs.rank)]
    ident = identity_element(rs)
    seen = {ident.perm: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                v = compose(rs, w, g)
                if v.perm not in seen:
                    if len(seen) >= cap:
                        raise WeylCapError(
                            f"|W| exceeds cap {cap} for system {rs.spec}"
                        )
                    seen[v.perm] = v
                    nxt.append(v)
        frontier = nxt

    elements = tuple(sorted(seen.values(), key=lambda w: (len(w.word), w.word)))
    n = rs.n_pos
    longest = [
        w
        for w in elements
        if all(w.perm[rs.simple_indices[j]] >= n for j in range(rs.rank))
    ]
    assert len(longest) == 1
    return WeylGroup(rs=rs, elements=elements, longest=longest[0])


# ---------------------------------------------------------------------------
# Parabolic types


@dataclass(frozen=True)
class ParabolicType:
    """A subset of the simple roots, ordered by inclusion."""

    indices: frozenset[int]

    def __init__(self, indices: Iterable[int]):
        object.__setattr__(self, "indices", frozenset(indices))

    def __le__(self, other: "ParabolicType") -> bool:
        return self.indices <= other.indices

    def __lt__(self, other: "ParabolicType") -> bool:
        return self.indices < other.indices

    def __ge__(self, other: "ParabolicType") -> bool:
        return self.indices >= other.indices

    def __gt__(self, other: "ParabolicType") -> bool:
        return self.indices > other.indices

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def __iter__(self):
        return iter(sorted(self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def bits(self, rank: int) -> str:
        return "".join("1" if i in self.indices else "0" for i in range(rank))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.indices)) + "}"


def borel_type() -> ParabolicType:
    return ParabolicType(frozenset())


def full_type(rs: RootSystem) -> ParabolicType:
    return ParabolicType(range(rs.rank))


def all_types(rs: RootSystem) -> list[ParabolicType]:
    """All 2^rank parabolic types, smallest first, deterministic order."""
    out = []
    for mask in range(1 << rs.rank):
        out.append(ParabolicType(i for i in range(rs.rank) if mask >> i & 1))
    out.sort(key=lambda t: (len(t), sorted(t.indices)))
    return out


def validate_type(rs: RootSystem, tau: ParabolicType) -> None:
    if not all(0 <= i < rs.rank for i in tau.indices):
        raise RootSystemError(f"type {tau} not a subset of the simple roots")


@dataclass(frozen=True)
class LeviDecomposition:
    """Root data of a standard parabolic: Levi roots and radical roots."""

    levi: tuple[tuple[int, ...], ...]
    radical: tuple[tuple[int, ...], ...]
    levi_pos: tuple[tuple[int, ...], ...]
    levi_neg: tuple[tuple[int, ...], ...]


def levi_and_radical_roots(rs: RootSystem, tau: ParabolicType) -> LeviDecomposition:
    """Partition the roots along the standard parabolic of type tau.

    The Levi roots are those supported on tau; the radical roots are the
    remaining positive roots.  Together with the negated radical roots
    this partitions the whole root set.
    """
    validate_type(rs, tau)
    levi, radical = [], []
    for i in range(rs.n_pos):
        r = rs.roots[i]
        if rs.support(r) <= tau.indices:
            levi.append(r)
        else:
            radical.append(r)
    levi_pos = tuple(levi)
    levi_neg = tuple(tuple(-c for c in r) for r in levi)
    return LeviDecomposition(
        levi=levi_pos + levi_neg,
        radical=tuple(radical),
        levi_pos=levi_pos,
        levi_neg=levi_neg,
    )


def opposite_type(
    rs: RootSystem, tau: ParabolicType, cap: int = DEFAULT_WEYL_CAP
) -> ParabolicType:
    """The involution tau -> -w0(tau) on subsets of the simple roots."""
    validate_type(rs, tau)
    w0 = weyl_group(rs, cap).longest
    out = set()
    for j in tau.indices:
        img = act_vector(rs, w0, rs.simple_root(j))
        neg = tuple(-c for c in img)
        k = rs.support(neg)
        if len(k) != 1 or neg != rs.simple_root(next(iter(k))):
            raise RootSystemError("longest element does not permute -Δ")  # pragma: no cover
        out.add(next(iter(k)))
    return ParabolicType(out)


@dataclass(frozen=True)
class TypePoset:
    """The Boolean lattice of parabolic types under inclusion."""

    rs: RootSystem
    types: tuple[ParabolicType, ...]

    def le(self, a: ParabolicType, b: ParabolicType) -> bool:
        return a.indices <= b.indices

    @property
    def minimal(self) -> ParabolicType:
        return self.types[0]

    @property
    def maximal(self) -> ParabolicType:
        return self.types[-1]

    def covers(self) -> list[tuple[ParabolicType, ParabolicType]]:
        """Covering relations (tau' ⋖ tau iff tau' ⊂ tau with one root added)."""
        out = []
        for tau in self.types:
            for i in sorted(tau.indices):
                out.append((ParabolicType(tau.indices - {i}), tau))
        out.sort(key=lambda e: (sorted(e[0].indices), sorted(e[1].indices), len(e[0])))
        return out


def type_poset(rs: RootSystem) -> TypePoset:
    return TypePoset(rs=rs, types=tuple(all_types(rs)))


def coset_min_rep(rs: RootSystem, w: WeylElement, tau: ParabolicType) -> WeylElement:
    """Minimal-length representative of the coset w·W_tau.

    Repeatedly strips right descents lying in tau; the result is the unique
    coset element sending every simple root of tau to a positive root.
    """
    n = rs.n_pos
    cur = w
    changed = True
    while changed:
        changed = False
        for j in sorted(tau.indices):
            if cur.perm[rs.simple_indices[j]] >= n:
                cur = compose(rs, cur, simple_reflection(rs, j))
                changed = True
    return canonicalize(rs, cur)


def in_levi_subgroup(rs: RootSystem, w: WeylElement, tau: ParabolicType) -> bool:
    """Whether w lies in the parabolic subgroup W_tau."""
    return coset_min_rep(rs, w, tau).is_identity
