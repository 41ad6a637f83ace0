"""The double ``V_A = A (+) A^`` with its Heisenberg cocycle, symplectic form and Sp(V_A).

Elements of ``V_A`` are coordinate vectors ``(a_1..a_m, c_1..c_m)`` with moduli
``(d_1..d_m, d_1..d_m)``, ranked in mixed radix (last coordinate fastest), so
rank 0 is the zero element.  Every phase table is stored as integer numerators
over the common denominator ``den = 2 * exponent(A)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .abelian import FinAbGroup, Phase, make_group, primary_decompose


class ResourceError(RuntimeError):
    """A computation would exceed its configured budget."""


MAX_V_SIZE = 4096   # |V|^2 lookup tables beyond this do not fit a desk machine


class DoubleSpace:
    def __init__(self, base: FinAbGroup):
        if base.size ** 2 > MAX_V_SIZE:
            raise ResourceError(f"|V_A| = {base.size ** 2} for {base.spec()} exceeds {MAX_V_SIZE}")
        self.base = base
        self.m = base.rank
        self.moduli = tuple(base.orders) * 2
        self.size = base.size ** 2
        self.exponent = base.exponent
        self.den = 2 * base.exponent
        w = [1] * len(self.moduli)
        for i in range(len(self.moduli) - 2, -1, -1):
            w[i] = w[i + 1] * self.moduli[i + 1]
        self.weights = np.array(w, dtype=np.int64)
        self._mod = np.array(self.moduli, dtype=np.int64)

    def __repr__(self) -> str:
        return f"DoubleSpace({self.base.spec()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, DoubleSpace) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("V", self.base))

    @cached_property
    def elems(self) -> np.ndarray:
        out = np.array(list(itertools.product(*(range(d) for d in self.moduli))), dtype=np.int64)
        return out.reshape(self.size, len(self.moduli))

    @cached_property
    def basis(self) -> np.ndarray:
        """Ranks of the unit vectors ``g_j`` (reduced, so a ``Z_1`` factor gives 0)."""
        return self.ranks(np.eye(len(self.moduli), dtype=np.int64))

    def rank(self, coords) -> int:
        c = np.asarray(coords, dtype=np.int64) % self._mod
        return int(c @ self.weights)

    def ranks(self, coords: np.ndarray) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) % self._mod) @ self.weights

    def coords(self, r: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.elems[r])

    @cached_property
    def add_table(self) -> np.ndarray:
        e = self.elems
        return self.ranks(e[:, None, :] + e[None, :, :]).astype(np.int32)

    @cached_property
    def neg(self) -> np.ndarray:
        return self.ranks(-self.elems).astype(np.int32)

    @cached_property
    def elem_orders(self) -> np.ndarray:
        out = np.ones(self.size, dtype=np.int64)
        for x, d in zip(self.elems.T, self.moduli):
            out = np.lcm(out, d // np.gcd(x, d))
        return out

    @cached_property
    def _beta_weights(self) -> np.ndarray:
        return np.array([self.den // d for d in self.base.orders], dtype=np.int64)

    def beta_num(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Numerators of ``beta(u, v) = chi_u(a_v)`` for coordinate arrays (broadcasting)."""
        m = self.m
        return ((u[..., m:] * v[..., :m]) @ self._beta_weights) % self.den

    @cached_property
    def beta_table(self) -> np.ndarray:
        e = self.elems
        m = self.m
        return ((e[:, None, m:] * e[None, :, :m]) @ self._beta_weights % self.den).astype(np.int64)

    @cached_property
    def omega_table(self) -> np.ndarray:
        b = self.beta_table
        return (b - b.T) % self.den

    @cached_property
    def beta_diag(self) -> np.ndarray:
        return self.beta_num(self.elems, self.elems)

    def phase(self, num: int) -> Phase:
        return Phase(int(num), self.den)

    @cached_property
    def _char_key_weights(self) -> np.ndarray:
        return self.den ** np.arange(len(self.moduli), dtype=np.int64)

    @cached_property
    def _char_lookup(self) -> np.ndarray:
        # a character is fixed by its values on the basis; index them by a base-den key
        n_keys = self.den ** len(self.moduli)
        if n_keys > 50_000_000:
            raise ResourceError(f"character lookup for {self} needs {n_keys} slots")
        lookup = np.full(n_keys, -1, dtype=np.int64)
        keys = self.omega_table[:, self.basis] @ self._char_key_weights
        lookup[keys] = np.arange(self.size)
        return lookup

    def char_to_elem(self, tables: np.ndarray) -> np.ndarray:
        """``kappa_inv`` for a stack of character tables; -1 where no element matches.

        A table is matched only if it agrees with the character everywhere, so
        non-additive inputs come back as -1.
        """
        tables = np.atleast_2d(tables) % self.den
        keys = tables[:, self.basis] @ self._char_key_weights
        v = self._char_lookup[keys]
        ok = (v >= 0) & np.all(self.omega_table[np.maximum(v, 0)] == tables, axis=1)
        return np.where(ok, v, -1)


def double(A: FinAbGroup) -> DoubleSpace:
    return DoubleSpace(A)


def _as_coords(V: DoubleSpace, u) -> np.ndarray:
    if isinstance(u, (int, np.integer)):
        return V.elems[int(u)]
    return np.asarray(u, dtype=np.int64) % V._mod


def beta(V: DoubleSpace, u, v) -> Phase:
    """``beta_A((a, chi), (b, psi)) = chi(b)``; ``u``/``v`` are ranks or coordinate tuples."""
    return V.phase(V.beta_num(_as_coords(V, u), _as_coords(V, v)))


def omega(V: DoubleSpace, u, v) -> Phase:
    return beta(V, u, v) - beta(V, v, u)


def kappa(V: DoubleSpace, v) -> np.ndarray:
    """The character ``u -> omega(v, u)`` as a numerator table over ``V.den``."""
    r = v if isinstance(v, (int, np.integer)) else V.rank(v)
    return V.omega_table[int(r)].copy()


def kappa_inv(V: DoubleSpace, table) -> int:
    r = int(V.char_to_elem(np.asarray(table, dtype=np.int64))[0])
    if r < 0:
        raise ValueError("table is not a character of V (not additive)")
    return r


@dataclass(frozen=True, eq=False)
class EndoMap:
    """An endomorphism of ``V``: ``(Tu)_i = sum_j M[i, j] u_j  mod moduli[i]``."""

    V: DoubleSpace
    matrix: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.int64)
        n = len(self.V.moduli)
        if M.shape != (n, n):
            raise ValueError(f"EndoMap needs a {n}x{n} matrix, got shape {M.shape}")
        mod = np.array(self.V.moduli, dtype=np.int64)
        M %= mod[:, None]
        # column j must be killed by d_j, else the map is not well defined on V
        if np.any((M * mod[None, :]) % mod[:, None]):
            raise ValueError("matrix does not define a homomorphism of V (divisibility)")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def key(self) -> bytes:
        return self.matrix.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, EndoMap) and self.V == other.V and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def apply(self, coords) -> tuple[int, ...]:
        out = (self.matrix @ np.asarray(coords, dtype=np.int64)) % self.V._mod
        return tuple(int(x) for x in out)

    @property
    def perm(self) -> np.ndarray:
        """Ranks of the images of all elements, indexed by rank."""
        p = self._cache.get("perm")
        if p is None:
            p = self.V.ranks(self.V.elems @ self.matrix.T)
            p.setflags(write=False)
            self._cache["perm"] = p
        return p

    def __matmul__(self, other: EndoMap) -> EndoMap:
        return EndoMap(self.V, self.matrix @ other.matrix)

    def is_bijective(self) -> bool:
        return len(np.unique(self.perm)) == self.V.size

    @classmethod
    def identity(cls, V: DoubleSpace) -> EndoMap:
        return cls(V, np.eye(len(V.moduli), dtype=np.int64))

    @classmethod
    def from_images(cls, V: DoubleSpace, image_ranks) -> EndoMap:
        """The map sending ``g_j`` to the element of rank ``image_ranks[j]``."""
        return cls(V, V.elems[np.asarray(image_ranks)].T)


def is_symplectic(V: DoubleSpace, T: EndoMap) -> bool:
    img = T.perm[V.basis]
    om = V.omega_table
    if not np.array_equal(om[np.ix_(img, img)], om[np.ix_(V.basis, V.basis)]):
        return False
    return T.is_bijective()


def cyclic_generators(V: DoubleSpace) -> tuple[EndoMap, EndoMap]:
    """The maps ``t(a, p) = (a + p, p)`` and ``s(a, p) = (-p, a)`` for cyclic ``A``."""
    if V.m != 1:
        raise ValueError("t and s are defined for cyclic A only")
    return EndoMap(V, [[1, 1], [0, 1]]), EndoMap(V, [[0, -1], [1, 0]])


def enumerate_sp(V: DoubleSpace, max_size: int = 100_000) -> list[EndoMap]:
    """All symplectic automorphisms, by depth-first choice of basis images.

    Output is sorted lexicographically by the ranks of the basis images.
    """
    return SymplecticGroup.enumerate(V, max_size=max_size).maps


def _images_dfs(V: DoubleSpace, max_size: int) -> np.ndarray:
    n = len(V.moduli)
    om = V.omega_table
    gram = om[np.ix_(V.basis, V.basis)]
    orders = V.elem_orders
    allowed = [np.flatnonzero(d % orders == 0) for d in V.moduli]
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(j: int):
        if j == n:
            found.append(tuple(chosen))
            if len(found) > max_size:
                raise ResourceError(f"Sp({V.base.spec()}) exceeds the budget of {max_size} elements")
            return
        cand = allowed[j]
        for i, img in enumerate(chosen):
            cand = cand[om[img, cand] == gram[i, j]]
        for c in cand.tolist():
            chosen.append(c)
            rec(j + 1)
            chosen.pop()

    rec(0)
    return np.array(found, dtype=np.int64).reshape(len(found), n)


class SymplecticGroup:
    """An enumerated Sp(V) with index-level multiplication.

    ``images[k]`` are the basis-image ranks of element ``k`` and ``perms[k]`` its
    full action on ranks.  Elements are kept in lexicographic order of
    ``images``, which makes the int64 key below sorted.
    """

    def __init__(self, V: DoubleSpace, images: np.ndarray):
        self.V = V
        order = np.lexsort(images.T[::-1])
        self.images = np.ascontiguousarray(images[order])
        n = len(V.moduli)
        if V.size ** n >= 2 ** 62:
            raise ResourceError(f"element keys for Sp({V.base.spec()}) overflow int64")
        self._key_w = V.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.keys = self.images @ self._key_w
        if np.any(np.diff(self.keys) <= 0):
            raise AssertionError("duplicate symplectic maps")
        self.perms = self._perms_from_images(self.images)
        if not np.all(np.sort(self.perms, axis=1) == np.arange(V.size)):
            raise AssertionError("enumerated map is not bijective")
        self.identity = self.index_of_images(V.basis)

    @classmethod
    def enumerate(cls, V: DoubleSpace, max_size: int = 100_000) -> SymplecticGroup:
        return cls(V, _images_dfs(V, max_size))

    def _perms_from_images(self, images: np.ndarray) -> np.ndarray:
        # T(u) = sum_j u_j T(g_j), evaluated coordinatewise on all elements
        V = self.V
        img_coords = V.elems[images]                       # (k, n, n): image j, coordinate i
        out = np.empty((len(images), V.size), dtype=np.int32)
        for s in range(0, len(images), 2048):
            blk = img_coords[s:s + 2048]
            c = np.einsum("uj,kji->kui", V.elems, blk)
            out[s:s + 2048] = V.ranks(c)
        return out

    def __len__(self) -> int:
        return len(self.images)

    @cached_property
    def maps(self) -> list[EndoMap]:
        return [EndoMap.from_images(self.V, img) for img in self.images]

    def index_of_images(self, images) -> int:
        k = int(np.asarray(images, dtype=np.int64) @ self._key_w)
        i = int(np.searchsorted(self.keys, k))
        if i == len(self.keys) or self.keys[i] != k:
            raise KeyError("not an element of this Sp")
        return i

    def index(self, T: EndoMap) -> int:
        return self.index_of_images(T.perm[self.V.basis])

    def lookup(self, images: np.ndarray) -> np.ndarray:
        """Vectorised index lookup for rows of basis-image ranks."""
        k = images.astype(np.int64) @ self._key_w
        i = np.searchsorted(self.keys, k)
        i = np.minimum(i, len(self.keys) - 1)
        if not np.all(self.keys[i] == k):
            raise KeyError("product left the group")
        return i

    def mul(self, i: int, j: int) -> int:
        """Index of ``T_i o T_j``."""
        return self.index_of_images(self.perms[i][self.images[j]])

    def mul_row(self, i: int) -> np.ndarray:
        """Indices of ``T_i o T_j`` for all ``j``."""
        return self.lookup(self.perms[i][self.images])

    @cached_property
    def mult_table(self) -> np.ndarray:
        if len(self) > 4000:
            raise ResourceError(f"multiplication table of {len(self)} elements is over budget")
        return np.stack([self.mul_row(i) for i in range(len(self))]).astype(np.int32)

    @cached_property
    def inverses(self) -> np.ndarray:
        # the inverse sends T(g_j) back to g_j
        pinv = np.argsort(self.perms, axis=1)
        return self.lookup(pinv[:, self.V.basis])

    def right_mul(self, g: int) -> np.ndarray:
        """Indices of ``T_j o T_g`` for all ``j``."""
        return self.lookup(self.perms[:, self.images[g]])

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity:
            cur = self.mul(cur, i)
            k += 1
        return k

    def closure(self, gens: list[int]) -> set[int]:
        return set(self.closure_mask(gens).nonzero()[0].tolist())

    def closure_mask(self, gens: list[int]) -> np.ndarray:
        """Membership mask of the subgroup generated by ``gens`` (BFS on right multiplication)."""
        seen = np.zeros(len(self), dtype=bool)
        seen[self.identity] = True
        rmul = [self.right_mul(g) for g in gens]
        frontier = np.array([self.identity])
        while len(frontier):
            nxt = np.unique(np.concatenate([r[frontier] for r in rmul])) if rmul else frontier[:0]
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt
        return seen


def find_generating_set(sp: SymplecticGroup, preferred: list[int] | None = None,
                        max_pair_tries: int = 200, seed: int = 0) -> list[int]:
    """A small generating set (indices): ``preferred`` if it generates, else a pair or greedy."""
    n = len(sp)
    if n == 1:
        return []
    if preferred and sp.closure_mask(list(preferred)).all():
        return list(preferred)
    if n <= 5000:
        pool = np.arange(n)
    else:
        pool = np.random.default_rng(seed).choice(n, 256, replace=False)
    orders = np.array([sp.element_order(int(i)) for i in pool])
    cand = [int(pool[i]) for i in np.argsort(-orders, kind="stable")]
    g1 = cand[0]
    for g2 in cand[1:max_pair_tries + 1]:
        if sp.closure_mask([g1, g2]).all():
            return [g1, g2]
    rng = np.random.default_rng(seed)
    for _ in range(max_pair_tries):
        i, j = (int(x) for x in rng.integers(0, n, 2))
        if sp.closure_mask([i, j]).all():
            return sorted([i, j])
    gens: list[int] = []
    covered = np.zeros(n, dtype=bool)
    covered[sp.identity] = True
    for c in list(cand) + list(range(n)):
        if not covered[c]:
            gens.append(c)
            covered = sp.closure_mask(gens)
            if covered.all():
                break
    return gens


# --- bicharacters -----------------------------------------------------------


def _moduli_of(space) -> tuple[int, ...]:
    if isinstance(space, DoubleSpace):
        return space.moduli
    if isinstance(space, FinAbGroup):
        return space.orders
    return tuple(space)


@dataclass(frozen=True, eq=False)
class Bicharacter:
    """A biadditive map on ``Z_{n_1} (+) ... (+) Z_{n_k}`` given by generator pairings.

    ``matrix[i, j]`` is the numerator of ``B(g_i, g_j)`` over ``den = lcm(moduli)``.
    """

    moduli: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.int64) % self.den
        mod = np.array(self.moduli, dtype=np.int64)
        # B(g_i, g_j) must be killed by both n_i and n_j
        if np.any((M * mod[:, None]) % self.den) or np.any((M * mod[None, :]) % self.den):
            raise ValueError("generator pairings incompatible with the moduli")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def den(self) -> int:
        return math.lcm(*self.moduli)

    @cached_property
    def elems(self) -> np.ndarray:
        return np.array(list(itertools.product(*(range(d) for d in self.moduli))), dtype=np.int64).reshape(-1, len(self.moduli))

    def table(self) -> np.ndarray:
        if len(self.elems) > 4096:
            raise ResourceError("bicharacter table too large to materialise")
        e = self.elems
        return (e @ self.matrix @ e.T) % self.den

    def __call__(self, u, v) -> Phase:
        return Phase(int(np.asarray(u) @ self.matrix @ np.asarray(v)), self.den)

    def __sub__(self, other: Bicharacter) -> Bicharacter:
        return Bicharacter(self.moduli, self.matrix - other.matrix)

    def transpose(self) -> Bicharacter:
        return Bicharacter(self.moduli, self.matrix.T)

    def key(self) -> bytes:
        return self.matrix.tobytes()


def beta_bicharacter(V: DoubleSpace) -> Bicharacter:
    m, e = V.m, V.exponent
    M = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i, d in enumerate(V.base.orders):
        M[m + i, i] = e // d            # chi_i(g_i) = 1/d_i
    return Bicharacter(V.moduli, M)


def antisymmetrize(B: Bicharacter) -> Bicharacter:
    return B - B.transpose()


def is_symmetric(B: Bicharacter) -> bool:
    t = B.table()
    return bool(np.array_equal(t, t.T))


def is_alternating(B: Bicharacter) -> bool:
    return not np.any(np.diagonal(B.table()))


def is_biadditive(B: Bicharacter) -> bool:
    """Exhaustive check of additivity in each slot on the materialised table."""
    e = B.elems
    mod = np.array(B.moduli)
    rank_w = np.array([math.prod(B.moduli[i + 1:]) for i in range(len(B.moduli))], dtype=np.int64)
    add = ((e[:, None, :] + e[None, :, :]) % mod) @ rank_w
    t = B.table()
    left = t[add] - (t[:, None, :] + t[None, :, :])        # B(u+v, w) - B(u,w) - B(v,w)
    return not np.any(left % B.den) and not np.any((t.T[add] - (t.T[:, None, :] + t.T[None, :, :])) % B.den)


def all_bicharacters(moduli) -> list[Bicharacter]:
    moduli = _moduli_of(moduli)
    den = math.lcm(*moduli) if moduli else 1
    k = len(moduli)
    choices = []
    for i in range(k):
        for j in range(k):
            g = math.gcd(moduli[i], moduli[j])
            choices.append([(den // g) * t for t in range(g)])
    total = math.prod(len(c) for c in choices)
    if total > 200_000:
        raise ResourceError(f"{total} bicharacters is over the enumeration budget")
    return [Bicharacter(moduli, np.array(vals, dtype=np.int64).reshape(k, k))
            for vals in itertools.product(*choices)]


@dataclass
class TambaraReport:
    moduli: tuple[int, ...]
    n_bil: int
    n_sym: int
    n_alt: int
    surjective: bool
    kernel_is_sym: bool

    @property
    def exact(self) -> bool:
        return self.surjective and self.kernel_is_sym and self.n_bil == self.n_sym * self.n_alt


def tambara_check(space) -> TambaraReport:
    """Exactness of ``Sym -> Bil -> Alt`` under antisymmetrisation, by enumeration."""
    moduli = _moduli_of(space)
    bil = all_bicharacters(moduli)
    tables = {b.key(): b.table() for b in bil}
    sym = {k for k, b in zip(tables, bil) if is_symmetric(b)}
    alt = {t.tobytes() for b, t in zip(bil, tables.values()) if is_alternating(b)}
    image = set()
    kernel = set()
    for b in bil:
        a = antisymmetrize(b).table()
        image.add(a.tobytes())
        if not a.any():
            kernel.add(b.key())
    return TambaraReport(
        moduli=moduli,
        n_bil=len(bil),
        n_sym=len(sym),
        n_alt=len(alt),
        surjective=image == alt,
        kernel_is_sym=kernel == sym,
    )


# --- orthogonal decompositions of the double --------------------------------


class DoubleSplit:
    """``V_A = V_B (+) V_C`` as rank tables, compatible with the Heisenberg cocycles.

    ``to_b[r], to_c[r]`` are the component ranks of element ``r`` of ``V_A`` and
    ``from_bc[b, c]`` is the inverse.
    """

    def __init__(self, A: FinAbGroup, B: FinAbGroup, C: FinAbGroup,
                 a_map, dual_map, check: bool = True):
        # a_map(i, x) -> (xB dict, xC dict): factor i of A written in B/C coordinates
        self.A, self.B, self.C = A, B, C
        self.VA, self.VB, self.VC = DoubleSpace(A), DoubleSpace(B), DoubleSpace(C)
        m = A.rank
        eB = np.zeros((self.VA.size, 2 * B.rank), dtype=np.int64)
        eC = np.zeros((self.VA.size, 2 * C.rank), dtype=np.int64)
        for r, u in enumerate(self.VA.elems):
            for i in range(m):
                for tgt, k, val in a_map(i, int(u[i])):
                    (eB if tgt == "B" else eC)[r, k] += val
                for tgt, k, val in dual_map(i, int(u[m + i])):
                    rk = B.rank if tgt == "B" else C.rank
                    (eB if tgt == "B" else eC)[r, rk + k] += val
        self.to_b = self.VB.ranks(eB).astype(np.int64)
        self.to_c = self.VC.ranks(eC).astype(np.int64)
        self.from_bc = np.full((self.VB.size, self.VC.size), -1, dtype=np.int64)
        self.from_bc[self.to_b, self.to_c] = np.arange(self.VA.size)
        if np.any(self.from_bc < 0):
            raise AssertionError("decomposition maps are not bijective")
        if check:
            self.check_cocycle_compatible()

    def check_cocycle_compatible(self):
        """``beta_A = beta_B + beta_C`` on all pairs (as phases)."""
        VA, VB, VC = self.VA, self.VB, self.VC
        bb = VB.beta_table[np.ix_(self.to_b, self.to_b)] * (VA.den // VB.den)
        bc = VC.beta_table[np.ix_(self.to_c, self.to_c)] * (VA.den // VC.den)
        if np.any((VA.beta_table - bb - bc) % VA.den):
            raise AssertionError("split is not compatible with the Heisenberg cocycle")

    def b_part_ranks(self) -> np.ndarray:
        """Ranks in ``V_A`` of ``V_B (+) 0``, indexed by rank in ``V_B``."""
        return self.from_bc[:, 0]

    def join_perm(self, perm_b: np.ndarray, perm_c: np.ndarray) -> np.ndarray:
        return self.from_bc[perm_b[self.to_b], perm_c[self.to_c]]

    def join_map(self, Tb: EndoMap, Tc: EndoMap) -> EndoMap:
        p = self.join_perm(Tb.perm, Tc.perm)
        return EndoMap.from_images(self.VA, p[self.VA.basis])

    def swapped(self) -> DoubleSplit:
        """The same decomposition with the roles of ``B`` and ``C`` exchanged."""
        out = object.__new__(DoubleSplit)
        out.A, out.B, out.C = self.A, self.C, self.B
        out.VA, out.VB, out.VC = self.VA, self.VC, self.VB
        out.to_b, out.to_c = self.to_c, self.to_b
        out.from_bc = np.ascontiguousarray(self.from_bc.T)
        return out

    def split_perm(self, perm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Components of a block-diagonal map; raises if the map mixes the blocks."""
        on_b = perm[self.from_bc[:, 0]]
        on_c = perm[self.from_bc[0, :]]
        if np.any(self.to_c[on_b]) or np.any(self.to_b[on_c]):
            raise AssertionError("map does not preserve the decomposition")
        return self.to_b[on_b], self.to_c[on_c]


def primary_split(A: FinAbGroup, check: bool = True) -> DoubleSplit:
    """``V_A = V_{A_odd} (+) V_{A_2}`` via the CRT on each factor.

    A dual coordinate ``c`` of ``Z_{o t}`` restricts to ``c * t^-1 mod o`` on the
    odd part and ``c * o^-1 mod t`` on the 2-part.
    """
    pd = primary_decompose(A)

    def a_map(i, x):
        _, o, t = pd.factors[i]
        out = []
        if pd.odd_index[i] is not None:
            out.append(("B", pd.odd_index[i], x % o))
        if pd.two_index[i] is not None:
            out.append(("C", pd.two_index[i], x % t))
        return out

    def dual_map(i, c):
        _, o, t = pd.factors[i]
        out = []
        if pd.odd_index[i] is not None:
            out.append(("B", pd.odd_index[i], c * pow(t, -1, o) % o))
        if pd.two_index[i] is not None:
            out.append(("C", pd.two_index[i], c * pow(o, -1, t) % t))
        return out

    return DoubleSplit(A, pd.odd, pd.two, a_map, dual_map, check=check)


def direct_sum_split(B: FinAbGroup, C: FinAbGroup, check: bool = True) -> DoubleSplit:
    """``A = B (+) C`` with factors concatenated (and re-sorted into A's order)."""
    src = [("B", k, d) for k, d in enumerate(B.orders) if d > 1] + \
          [("C", k, d) for k, d in enumerate(C.orders) if d > 1]
    A = make_group([d for _, _, d in src])
    order = sorted(range(len(src)), key=lambda s: -src[s][2])
    slot = {pos: src[s] for pos, s in enumerate(order)}

    def a_map(i, x):
        if i not in slot:
            return []
        tgt, k, _ = slot[i]
        return [(tgt, k, x)]

    return DoubleSplit(A, B, C, a_map, a_map, check=check)
