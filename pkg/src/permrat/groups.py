"""Permutation-group engine.

A Group is an immutable permutation group given by generator image tuples.
Orders and membership come from a deterministic Schreier-Sims chain.  All
structural computations (conjugacy classes, centralizers, normalizers,
Sylow subgroups, subgroup enumeration) work on a materialized element list
and are therefore restricted to desk scale; the bounds are explicit module
constants.  Lazy caches are plain attributes filled once; construction of
every cache is deterministic, so results are scheduling-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import perms
from .errors import InputError, InternalConsistencyError, UnsupportedRangeError
from .numutil import factor, ord_p, prime_factors

# Desk-scale bounds.  Above ENUM_BOUND only order/membership (via the
# stabilizer chain) are available.
ENUM_BOUND = 200_000
MULT_TABLE_BOUND = 1500
NAIVE_SUBGROUP_BOUND = 400
SOLVABLE_SUBGROUP_BOUND = 2000
CONJUGACY_DEDUP_BOUND = 10_000


# ---------------------------------------------------------------------------
# Stabilizer chain


class StabilizerChain:
    """Deterministic Schreier-Sims chain with full Schreier-generator
    verification (textbook algorithm; no randomization)."""

    def __init__(self, generators: list[tuple[int, ...]], degree: int):
        self.degree = degree
        self._ident = perms.identity_tuple(degree)
        self.base: list[int] = []
        self.level_gens: list[list[tuple[int, ...]]] = []
        self.transversals: list[dict[int, tuple[int, ...]]] = []
        gens = [g for g in generators if g != self._ident]
        for g in gens:
            if all(g[b] == b for b in self.base):
                self.base.append(self._first_moved(g))
        for i, b in enumerate(self.base):
            prefix = self.base[:i]
            self.level_gens.append(
                [g for g in gens if all(g[p] == p for p in prefix)]
            )
            self.transversals.append({})
        if self.base:
            self._schreier_sims()

    def _first_moved(self, g: tuple[int, ...]) -> int:
        for i, x in enumerate(g):
            if x != i:
                return i
        raise InternalConsistencyError("identity passed to _first_moved")

    def _recompute_orbit(self, i: int) -> None:
        b = self.base[i]
        tr = {b: self._ident}
        orbit = [b]
        k = 0
        gens = self.level_gens[i]
        while k < len(orbit):
            pt = orbit[k]
            k += 1
            rep = tr[pt]
            for s in gens:
                img = s[pt]
                if img not in tr:
                    tr[img] = perms.mul(s, rep)
                    orbit.append(img)
        self.transversals[i] = tr

    def _sift(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        """Strip g through levels start.., returning (residue, stop_level).

        stop_level is the level whose transversal missed, or len(base) if g
        stripped through every level.
        """
        h = g
        for i in range(start, len(self.base)):
            rep = self.transversals[i].get(h[self.base[i]])
            if rep is None:
                return h, i
            h = perms.mul(perms.inv(rep), h)
        return h, len(self.base)

    def _schreier_sims(self) -> None:
        k = len(self.base)
        i = k - 1
        while i >= 0:
            self._recompute_orbit(i)
            tr = self.transversals[i]
            restart = False
            for pt in list(tr):
                u = tr[pt]
                for s in self.level_gens[i]:
                    img_rep = tr[s[pt]]
                    schreier = perms.mul(perms.inv(img_rep), perms.mul(s, u))
                    if schreier == self._ident:
                        continue
                    h, j = self._sift(schreier, i + 1)
                    if h == self._ident:
                        continue
                    if j == len(self.base):
                        self.base.append(self._first_moved(h))
                        self.level_gens.append([])
                        self.transversals.append({})
                    for l in range(i + 1, j + 1):
                        self.level_gens[l].append(h)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    @property
    def order(self) -> int:
        o = 1
        for tr in self.transversals:
            o *= len(tr)
        return o

    def fundamental_orbit_lengths(self) -> list[int]:
        return [len(tr) for tr in self.transversals]

    def contains(self, g: tuple[int, ...]) -> bool:
        if len(g) != self.degree:
            return False
        h, at = self._sift(g, 0)
        return at == len(self.base) and h == self._ident


# ---------------------------------------------------------------------------
# Conjugacy / cyclic-subgroup class records


@dataclass(frozen=True)
class ConjClass:
    rep: int  # element index of the representative
    size: int
    element_order: int


@dataclass(frozen=True)
class CyclicClass:
    """Conjugacy class of cyclic subgroups <x>."""

    rep_class: int  # index into group.classes() of a generator's class
    subgroup_order: int
    normalizer_order: int
    count: int  # number of subgroups in the class, |G| / |N_G(C)|
    fused_classes: tuple[int, ...]  # element classes generating a conjugate of C


class Group:
    """Finite permutation group on 0-based points."""

    def __init__(self, generators, degree: int | None = None, name: str | None = None):
        gens = []
        for g in generators:
            t = g.images if isinstance(g, perms.Permutation) else tuple(int(x) for x in g)
            gens.append(t)
        if not gens:
            if degree is None:
                raise InputError("empty generator list needs an explicit degree")
            gens = [perms.identity_tuple(degree)]
        degs = {len(g) for g in gens}
        if len(degs) != 1:
            raise InputError(f"generator degree mismatch: {sorted(degs)}")
        self.degree = degs.pop()
        if degree is not None and degree != self.degree:
            raise InputError(f"declared degree {degree} != generator degree {self.degree}")
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise InputError("generator is not a permutation")
        ident = perms.identity_tuple(self.degree)
        seen = set()
        self.generators: list[tuple[int, ...]] = []
        for g in gens:
            if g != ident and g not in seen:
                seen.add(g)
                self.generators.append(g)
        self.name = name
        self._chain: StabilizerChain | None = None
        self._elements: list[tuple[int, ...]] | None = None
        self._index: dict[tuple[int, ...], int] | None = None
        self._inv: list[int] | None = None
        self._mult: list[list[int]] | None = None
        self._conj_tables: list[list[int]] | None = None
        self._classes: list[ConjClass] | None = None
        self._class_of: list[int] | None = None
        self._class_members: list[list[int]] | None = None
        self._cyclic_classes: list[CyclicClass] | None = None
        self._subgroup_classes: list[Subgroup] | None = None
        self._derived: frozenset[int] | None = None

    # -- chain-level interface ------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    def __contains__(self, g) -> bool:
        t = g.images if isinstance(g, perms.Permutation) else tuple(g)
        return self.chain.contains(t)

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree} group"
        return f"Group({label}, order={self.order})"

    @property
    def identity(self) -> tuple[int, ...]:
        return perms.identity_tuple(self.degree)

    # -- materialization -------------------------------------------------------

    def _require_enumerable(self) -> None:
        if self.order > ENUM_BOUND:
            raise UnsupportedRangeError(
                f"group of order {self.order} exceeds the enumeration bound {ENUM_BOUND}"
            )

    @property
    def elements(self) -> list[tuple[int, ...]]:
        """All elements in deterministic BFS order (identity first)."""
        if self._elements is None:
            self._require_enumerable()
            ident = self.identity
            elems = [ident]
            index = {ident: 0}
            i = 0
            while i < len(elems):
                x = elems[i]
                i += 1
                for g in self.generators:
                    y = perms.mul(x, g)
                    if y not in index:
                        index[y] = len(elems)
                        elems.append(y)
            if len(elems) != self.order:
                raise InternalConsistencyError(
                    f"enumeration found {len(elems)} elements, chain order {self.order}"
                )
            self._elements = elems
            self._index = index
        return self._elements

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        self.elements
        return self._index

    def element_index(self, g) -> int:
        t = g.images if isinstance(g, perms.Permutation) else tuple(g)
        idx = self.index.get(t)
        if idx is None:
            raise InputError("element does not belong to the group")
        return idx

    @property
    def inverse_table(self) -> list[int]:
        if self._inv is None:
            elems = self.elements
            self._inv = [self._index[perms.inv(x)] for x in elems]
        return self._inv

    @property
    def mult_table(self) -> list[list[int]] | None:
        """Full index multiplication table (only for small groups)."""
        if self._mult is None and self.order <= MULT_TABLE_BOUND:
            elems = self.elements
            index = self._index
            self._mult = [[index[perms.mul(x, y)] for y in elems] for x in elems]
        return self._mult

    def mul_idx(self, i: int, j: int) -> int:
        mt = self.mult_table
        if mt is not None:
            return mt[i][j]
        elems = self.elements
        return self._index[perms.mul(elems[i], elems[j])]

    def conj_idx(self, i: int, j: int) -> int:
        """Index of elements[j] * elements[i] * elements[j]^-1."""
        return self.mul_idx(self.mul_idx(j, i), self.inverse_table[j])

    @property
    def _generator_conj_tables(self) -> list[list[int]]:
        """For each generator g: table x -> index of g x g^-1."""
        if self._conj_tables is None:
            elems = self.elements
            index = self._index
            tables = []
            for g in self.generators:
                gi = perms.inv(g)
                tables.append([index[perms.mul(g, perms.mul(x, gi))] for x in elems])
            self._conj_tables = tables
        return self._conj_tables

    # -- conjugacy classes -----------------------------------------------------

    def classes(self) -> list[ConjClass]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def _compute_classes(self) -> None:
        elems = self.elements
        n = len(elems)
        tables = self._generator_conj_tables
        assigned = [-1] * n
        raw: list[list[int]] = []
        for i in range(n):
            if assigned[i] >= 0:
                continue
            cid = len(raw)
            members = [i]
            assigned[i] = cid
            k = 0
            while k < len(members):
                x = members[k]
                k += 1
                for t in tables:
                    y = t[x]
                    if assigned[y] < 0:
                        assigned[y] = cid
                        members.append(y)
            raw.append(sorted(members))
        keyed = []
        for members in raw:
            rep = members[0]
            keyed.append((perms.order(elems[rep]), len(members), rep, members))
        keyed.sort(key=lambda t: (t[0], t[1], t[2]))
        self._classes = [ConjClass(rep, size, order) for order, size, rep, _ in keyed]
        self._class_members = [members for _, _, _, members in keyed]
        class_of = [0] * n
        for cid, members in enumerate(self._class_members):
            for x in members:
                class_of[x] = cid
        self._class_of = class_of
        if sum(c.size for c in self._classes) != self.order:
            raise InternalConsistencyError("class sizes do not sum to the group order")

    @property
    def class_of(self) -> list[int]:
        self.classes()
        return self._class_of

    def class_members(self, cid: int) -> list[int]:
        self.classes()
        return self._class_members[cid]

    @property
    def exponent(self) -> int:
        return lcm(*(c.element_order for c in self.classes()))

    def power_map(self, t: int) -> list[int]:
        """Class map of g -> g**t."""
        elems = self.elements
        out = []
        for c in self.classes():
            out.append(self.class_of[self._index[perms.power(elems[c.rep], t)]])
        return out

    def centralizer_order(self, cid: int) -> int:
        return self.order // self.classes()[cid].size

    # -- element-filter subgroup computations ----------------------------------

    def subgroup(self, gen_ids) -> "Subgroup":
        return Subgroup.from_generators(self, list(gen_ids))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset({0}), [])

    def full_subgroup(self) -> "Subgroup":
        gens = [self.element_index(g) for g in self.generators] or [0]
        return Subgroup(self, frozenset(range(self.order)), gens)

    def closure(self, seed_ids) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        todo = sorted(set(seed_ids) | {0})
        members = set(todo)
        gens = [i for i in todo if i != 0]
        queue = list(members)
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            for g in gens:
                y = self.mul_idx(x, g)
                if y not in members:
                    members.add(y)
                    queue.append(y)
        return frozenset(members)

    def centralizer(self, x) -> "Subgroup":
        """Centralizer of an element (given as permutation or element index)."""
        xi = x if isinstance(x, int) else self.element_index(x)
        elems = self.elements
        xt = elems[xi]
        ids = [i for i, g in enumerate(elems) if perms.mul(g, xt) == perms.mul(xt, g)]
        return Subgroup.from_element_ids(self, ids)

    def normalizer(self, h: "Subgroup") -> "Subgroup":
        if h.parent is not self:
            raise InputError("subgroup belongs to a different parent")
        hset = h.element_ids
        gens = h.generator_ids or [0]
        inv = self.inverse_table
        ids = []
        for gidx in range(self.order):
            gi = inv[gidx]
            ok = True
            for hid in gens:
                if self.mul_idx(self.mul_idx(gidx, hid), gi) not in hset:
                    ok = False
                    break
            if ok:
                ids.append(gidx)
        return Subgroup.from_element_ids(self, ids)

    def sylow(self, p: int) -> "Subgroup":
        """A Sylow p-subgroup; the trivial subgroup when p does not divide |G|."""
        target = p ** ord_p(p, self.order)
        if target == 1:
            return self.trivial_subgroup()
        elems = self.elements
        # pick a p-element of maximal order among class representatives
        best_ep = 0
        best = None
        for c in self.classes():
            e = ord_p(p, c.element_order)
            if e > best_ep:
                best_ep = e
                best = c
        m = best.element_order // p**best_ep
        x = self.index[perms.power(elems[best.rep], m)]
        members = self.closure([x])
        while len(members) < target:
            norm = self._normalizer_ids(members)
            extended = False
            for y in norm:
                if y in members:
                    continue
                oy = perms.order(elems[y])
                z = self.index[perms.power(elems[y], oy // p ** ord_p(p, oy))]
                if z not in members and z != 0:
                    members = self.closure(list(members) + [z])
                    extended = True
                    break
            if not extended:
                raise InternalConsistencyError("Sylow growth stalled")
        if len(members) != target:
            raise InternalConsistencyError("Sylow subgroup has wrong order")
        return Subgroup.from_element_ids(self, sorted(members))

    def _normalizer_ids(self, member_set) -> list[int]:
        gens = _small_generating_set(self, sorted(member_set))
        inv = self.inverse_table
        out = []
        for gidx in range(self.order):
            gi = inv[gidx]
            if all(self.mul_idx(self.mul_idx(gidx, hid), gi) in member_set for hid in gens):
                out.append(gidx)
        return out

    def _class_transporters(self, rep_id: int) -> dict[int, int]:
        """For each member y of the class of rep: an element g with
        g rep g^-1 = y (as element ids)."""
        tables = self._generator_conj_tables
        gen_ids = [self.element_index(g) for g in self.generators]
        trans = {rep_id: 0}
        queue = [rep_id]
        qi = 0
        while qi < len(queue):
            y = queue[qi]
            qi += 1
            gy = trans[y]
            for gid, t in zip(gen_ids, tables):
                z = t[y]
                if z not in trans:
                    trans[z] = self.mul_idx(gid, gy)
                    queue.append(z)
        return trans

    def centralizer_subgroup_of_class(self, cid: int) -> "Subgroup":
        """Centralizer of the class representative, via Schreier generators
        of the conjugation-orbit stabilizer (cheap even for large groups)."""
        rep = self.classes()[cid].rep
        target = self.centralizer_order(cid)
        if target == self.order:
            return self.full_subgroup()
        trans = self._class_transporters(rep)
        tables = self._generator_conj_tables
        gen_ids = [self.element_index(g) for g in self.generators]
        inv = self.inverse_table
        schreier = []
        for y, gy in trans.items():
            for gid, t in zip(gen_ids, tables):
                z = t[y]
                s = self.mul_idx(inv[trans[z]], self.mul_idx(gid, gy))
                if s:
                    schreier.append(s)
        sub = Subgroup.from_generators(self, sorted(set(schreier)))
        if sub.order != target:
            raise InternalConsistencyError("Schreier centralizer has wrong order")
        return sub

    def normalizer_of_cyclic(self, cid: int) -> "Subgroup":
        """Normalizer of <x> for x the representative of class cid.

        Assembled as <Z_G(x), transporters x -> x^t>; the order is checked
        against |Z_G(x)| * #{t coprime : x^t ~ x}."""
        from math import gcd as _gcd

        c = self.classes()[cid]
        if c.element_order == 1:
            return self.full_subgroup()
        zc = self.centralizer_subgroup_of_class(cid)
        if zc.order == self.order:
            return self.full_subgroup()  # central generator
        rep = c.rep
        d = c.element_order
        x = self.elements[rep]
        trans = self._class_transporters(rep)
        gens = set(zc.generator_ids) | {rep}
        count = 0
        for t in range(1, d + 1):
            if _gcd(t, d) != 1:
                continue
            g = trans.get(self._index[perms.power(x, t)])
            if g is not None:
                count += 1
                if g:
                    gens.add(g)
        target = zc.order * count
        sub = Subgroup.from_generators(self, sorted(gens))
        if sub.order != target:
            raise InternalConsistencyError("cyclic normalizer has wrong order")
        return sub

    # -- cyclic subgroup classes -----------------------------------------------

    def cyclic_subgroup_classes(self) -> list[CyclicClass]:
        if self._cyclic_classes is not None:
            return self._cyclic_classes
        classes = self.classes()
        elems = self.elements
        seen = set()
        out = []
        for cid, c in enumerate(classes):
            if cid in seen:
                continue
            d = c.element_order
            x = elems[c.rep]
            orbit = set()
            stab_count = 0
            powers = {}
            xt = self.identity
            for j in range(d):
                powers[j] = xt
                xt = perms.mul(xt, x)
            from math import gcd

            for t in range(1, d + 1):
                if gcd(t, d) != 1:
                    continue
                tc = self.class_of[self.index[powers[t % d]]]
                orbit.add(tc)
                if tc == cid:
                    stab_count += 1
            zc = self.centralizer_order(cid)
            nrm = zc * stab_count
            if self.order % nrm:
                raise InternalConsistencyError("normalizer order does not divide |G|")
            out.append(
                CyclicClass(
                    rep_class=min(orbit),
                    subgroup_order=d,
                    normalizer_order=nrm,
                    count=self.order // nrm,
                    fused_classes=tuple(sorted(orbit)),
                )
            )
            seen |= orbit
        out.sort(key=lambda cc: (cc.subgroup_order, cc.rep_class))
        total = sum(cc.count * _phi(cc.subgroup_order) for cc in out)
        if total != self.order:
            raise InternalConsistencyError("cyclic-class mass formula failed")
        self._cyclic_classes = out
        return out

    # -- solvability -----------------------------------------------------------

    def derived_subgroup_ids(self) -> frozenset[int]:
        if self._derived is None:
            inv = self.inverse_table
            gen_ids = [self.element_index(g) for g in self.generators] or [0]
            comms = set()
            for a in gen_ids:
                for b in gen_ids:
                    comms.add(
                        self.mul_idx(self.mul_idx(inv[a], inv[b]), self.mul_idx(a, b))
                    )
            members = self.closure(comms)
            # normal closure under conjugation by group generators
            while True:
                extra = set()
                for g in gen_ids:
                    gi = inv[g]
                    for x in members:
                        y = self.mul_idx(self.mul_idx(g, x), gi)
                        if y not in members:
                            extra.add(y)
                if not extra:
                    break
                members = self.closure(set(members) | extra)
            self._derived = members
        return self._derived

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            perms.mul(a, b) == perms.mul(b, a) for i, a in enumerate(gens) for b in gens[i:]
        )

    def is_solvable(self) -> bool:
        sub = Subgroup.from_element_ids(self, sorted(self.derived_subgroup_ids()))
        seen = {sub.order}
        while sub.order > 1:
            g = sub.as_group()
            nxt = g.derived_subgroup_ids()
            ids = sorted(self.element_index(g.elements[i]) for i in nxt)
            sub = Subgroup.from_element_ids(self, ids)
            if sub.order in seen and sub.order > 1:
                return False
            seen.add(sub.order)
        return True

    # -- subgroup enumeration ----------------------------------------------------

    def subgroup_classes(self) -> list["Subgroup"]:
        """All subgroups up to conjugacy (solvable: cyclic extension;
        otherwise exhaustive join closure for |G| <= NAIVE_SUBGROUP_BOUND)."""
        if self._subgroup_classes is not None:
            return self._subgroup_classes
        if self.order <= SOLVABLE_SUBGROUP_BOUND and self.is_solvable():
            found = self._subgroups_cyclic_extension()
        elif self.order <= NAIVE_SUBGROUP_BOUND:
            found = self._subgroups_join_closure()
        else:
            raise UnsupportedRangeError(
                f"subgroup enumeration unsupported: order {self.order} is neither "
                f"solvable <= {SOLVABLE_SUBGROUP_BOUND} nor <= {NAIVE_SUBGROUP_BOUND}"
            )
        self._subgroup_classes = found
        return found

    def _register_subgroup_orbit(self, ids: frozenset[int], pool: dict) -> list[frozenset[int]]:
        """Conjugation orbit of a subgroup (as index sets); registers members."""
        tables = self._generator_conj_tables
        orbit = [ids]
        pool[ids] = ids
        k = 0
        while k < len(orbit):
            cur = orbit[k]
            k += 1
            for t in tables:
                img = frozenset(t[x] for x in cur)
                if img not in pool:
                    pool[img] = ids
                    orbit.append(img)
        return orbit

    def _subgroups_cyclic_extension(self) -> list["Subgroup"]:
        elems = self.elements
        n = self.order
        pool: dict[frozenset[int], frozenset[int]] = {}
        norms: dict[frozenset[int], int] = {}
        trivial = frozenset({0})
        orbit = self._register_subgroup_orbit(trivial, pool)
        norms[trivial] = n
        queue = [trivial]
        qi = 0
        while qi < len(queue):
            hset = queue[qi]
            qi += 1
            h_order = len(hset)
            norm_ids = self._normalizer_ids(hset)
            rs = [r for r in prime_factors(n // h_order) if (len(norm_ids) // h_order) % r == 0]
            for r in rs:
                for y in norm_ids:
                    if y in hset:
                        continue
                    # y must have image of order r in N/H
                    yp = y
                    for _ in range(r - 1):
                        yp = self.mul_idx(yp, y)
                    if yp not in hset:
                        continue
                    kset = set(hset)
                    cos = y
                    for _ in range(r - 1):
                        kset.update(self.mul_idx(cos, h) for h in hset)
                        cos = self.mul_idx(cos, y)
                    kfro = frozenset(kset)
                    if len(kfro) != r * h_order:
                        raise InternalConsistencyError("cyclic extension size mismatch")
                    if kfro in pool:
                        continue
                    orbit = self._register_subgroup_orbit(kfro, pool)
                    canon = min(orbit, key=sorted)
                    norms[canon] = n // len(orbit)
                    queue.append(canon)
        return self._finalize_subgroup_classes(pool, norms)

    def _subgroups_join_closure(self) -> list["Subgroup"]:
        n = self.order
        if self.mult_table is None:
            raise UnsupportedRangeError("join closure needs the full multiplication table")
        elems = self.elements
        cyclics = []
        seen_sets = set()
        for i in range(1, n):
            cset = frozenset(self.closure([i]))
            if cset not in seen_sets:
                seen_sets.add(cset)
                cyclics.append(cset)
        pool: dict[frozenset[int], frozenset[int]] = {}
        norms: dict[frozenset[int], int] = {}
        trivial = frozenset({0})
        self._register_subgroup_orbit(trivial, pool)
        norms[trivial] = n
        queue = [trivial]
        for cset in cyclics:
            if cset not in pool:
                orbit = self._register_subgroup_orbit(cset, pool)
                canon = min(orbit, key=sorted)
                norms[canon] = n // len(orbit)
                queue.append(canon)
        qi = 0
        reps = set(queue)
        while qi < len(queue):
            hset = queue[qi]
            qi += 1
            for cset in cyclics:
                if cset <= hset:
                    continue
                j = self.closure(hset | cset)
                if j in pool:
                    continue
                orbit = self._register_subgroup_orbit(j, pool)
                canon = min(orbit, key=sorted)
                norms[canon] = n // len(orbit)
                queue.append(canon)
        return self._finalize_subgroup_classes(pool, norms)

    def _finalize_subgroup_classes(self, pool, norms) -> list["Subgroup"]:
        canon_sets = sorted(set(norms), key=lambda s: (len(s), sorted(s)))
        out = []
        for cset in canon_sets:
            sub = Subgroup.from_element_ids(self, sorted(cset))
            sub.normalizer_order = norms[cset]
            out.append(sub)
        return out

    # -- quotients ---------------------------------------------------------------

    def quotient(self, nsub: "Subgroup") -> tuple["Group", list[int]]:
        """Quotient by a normal subgroup.

        Returns (Q, point_of) where point_of[i] is the Q-point of the coset
        of elements[i].  Raises if the subgroup is not normal.
        """
        nset = nsub.element_ids
        gen_ids = [self.element_index(g) for g in self.generators] or [0]
        inv = self.inverse_table
        for g in gen_ids:
            gi = inv[g]
            for x in nsub.generator_ids or [0]:
                if self.mul_idx(self.mul_idx(g, x), gi) not in nset:
                    raise InputError("quotient by a non-normal subgroup")
        n = self.order
        coset_of = [-1] * n
        reps = []
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            for h in nset:
                coset_of[self.mul_idx(i, h)] = cid
        images = []
        for g in gen_ids:
            images.append(tuple(coset_of[self.mul_idx(g, r)] for r in reps))
        q = Group(images or [perms.identity_tuple(len(reps))], degree=len(reps))
        return q, coset_of


def _phi(n: int) -> int:
    from .numutil import totient

    return totient(n)


def _small_generating_set(group: Group, member_ids: list[int]) -> list[int]:
    """Greedy small generating set for a subgroup given by its element ids."""
    target = set(member_ids)
    if target == {0}:
        return []
    gens: list[int] = []
    have = {0}
    for i in member_ids:
        if i in have:
            continue
        gens.append(i)
        have = set(group.closure(gens))
        if have == target:
            break
    if have != target:
        raise InternalConsistencyError("generating-set reconstruction failed")
    return gens


class Subgroup:
    """Subgroup of a materialized parent group, stored as element indices."""

    __slots__ = ("parent", "element_ids", "generator_ids", "normalizer_order", "_group")

    def __init__(self, parent: Group, element_ids: frozenset[int], generator_ids: list[int]):
        self.parent = parent
        self.element_ids = element_ids
        self.generator_ids = generator_ids
        self.normalizer_order: int | None = None
        self._group: Group | None = None

    @classmethod
    def from_element_ids(cls, parent: Group, ids) -> "Subgroup":
        ids = sorted(ids)
        return cls(parent, frozenset(ids), _small_generating_set(parent, ids))

    @classmethod
    def from_generators(cls, parent: Group, gen_ids: list[int]) -> "Subgroup":
        members = parent.closure(gen_ids)
        return cls(parent, members, [g for g in gen_ids if g != 0])

    @property
    def order(self) -> int:
        return len(self.element_ids)

    def __contains__(self, idx: int) -> bool:
        return idx in self.element_ids

    def generator_tuples(self) -> list[tuple[int, ...]]:
        elems = self.parent.elements
        return [elems[i] for i in self.generator_ids]

    def as_group(self) -> Group:
        """The subgroup as a standalone Group on the same points."""
        if self._group is None:
            if self.order == self.parent.order:
                self._group = self.parent
            else:
                self._group = Group(self.generator_tuples() or [self.parent.identity],
                                    degree=self.parent.degree)
                if self._group.order != self.order:
                    raise InternalConsistencyError("subgroup closure mismatch")
        return self._group

    def conjugate(self, g: int) -> "Subgroup":
        par = self.parent
        gi = par.inverse_table[g]
        ids = frozenset(par.mul_idx(par.mul_idx(g, x), gi) for x in self.element_ids)
        gens = [par.mul_idx(par.mul_idx(g, x), gi) for x in self.generator_ids]
        return Subgroup(par, ids, gens)

    def is_conjugate_to(self, other: "Subgroup") -> bool:
        if self.parent is not other.parent:
            raise InputError("subgroups of different parents")
        if self.order != other.order:
            return False
        if self.element_ids == other.element_ids:
            return True
        par = self.parent
        inv = par.inverse_table
        oset = other.element_ids
        for g in range(par.order):
            gi = inv[g]
            if all(par.mul_idx(par.mul_idx(g, x), gi) in oset for x in self.generator_ids):
                return True
        return False

    def key(self) -> tuple:
        return (self.order, tuple(sorted(self.element_ids)))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"
