"""Local theory at quasi-elementary subgroups.

For each prime p the maximal p-quasi-elementary subgroups Q = C x| Syl_p(N_G(C))
are constructed from the conjugacy classes of cyclic subgroups of order prime
to p.  For each Q the finite group Char_Q(Q)/Perm(Q) is computed Schur-free
via the gcd of permutation-character multiplicities (valid because
quasi-elementary groups are supersoluble).  Two independent routes check the
result on every row:

  * the dimension formula: order = dim(psi-hull) * dim(pi-hull) / dim(rho),
    evaluated from the restriction to the cyclic part and to the Sylow
    p-subgroup (the Schur indices cancel from the Char_Q-order, except those
    of the p-group rows, where the quaternionic FS test is exact);
  * for basic Q, the closed form |P| / (|A_p| * max{|H| : H <= P, H cap A_p = 1}).

R_Q-orders are derived from the Char_Q-orders by dividing by the Schur index
supplied by a pluggable oracle; heuristic lookups are provenance-flagged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import perms
from .chartab import (
    ClassFunction,
    LinearCharacter,
    RationalTable,
    induce,
    linear_character_orbits,
    perm_character,
    rational_table,
    restrict,
)
from .errors import InputError, InternalConsistencyError
from .groups import CONJUGACY_DEDUP_BOUND, Group, Subgroup
from .numutil import totient

# ---------------------------------------------------------------------------
# Schur oracle


class SchurOracle:
    """Pluggable source of Schur indices for Q-irreducible rows.

    Modes: 'constant1', 'fs-heuristic' (2 exactly on quaternionic rows; exact
    for 2-groups, heuristic beyond), 'user-table' (exact lookup keyed by
    (group order, row values); missing entries raise).
    """

    def __init__(self, mode: str = "fs-heuristic", table: dict | None = None):
        if mode not in ("constant1", "fs-heuristic", "user-table"):
            raise InputError(f"unknown Schur oracle mode {mode!r}")
        if mode == "user-table" and table is None:
            raise InputError("user-table oracle needs a table")
        self.mode = mode
        self.table = table or {}
        self.heuristic_consulted = False

    @classmethod
    def from_json_file(cls, path: str) -> "SchurOracle":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        table = {}
        for entry in data["entries"]:
            key = (int(entry["group_order"]), tuple(int(v) for v in entry["row"]))
            table[key] = int(entry["schur"])
        return cls(mode="user-table", table=table)

    def index(self, table: RationalTable, row_index: int) -> int:
        row = table.rows[row_index]
        if self.mode == "constant1":
            s = 1
        elif self.mode == "fs-heuristic":
            s = 2 if row.fs == -1 else 1
            if s == 2 or row.fs == 0:
                self.heuristic_consulted = True
        else:
            key = (table.group.order, row.values)
            if key not in self.table:
                raise InputError(
                    f"Schur table has no entry for a row of a group of order "
                    f"{table.group.order}: {row.values}"
                )
            s = self.table[key]
        if s < 1 or row.degree % s:
            raise InputError(f"Schur index {s} does not divide the degree {row.degree}")
        return s


# ---------------------------------------------------------------------------
# quasi-elementary descriptors


@dataclass
class QEDescriptor:
    """Q = C x| P inside a parent group, with the kernel data of Prop-style
    closed forms."""

    parent: Group
    p: int
    sub: Subgroup  # Q as a subgroup of the parent
    group: Group  # Q as a standalone group
    c_order: int
    c_gen_local: int  # element id (in `group`) generating C
    c_sub: Subgroup  # C <= group
    p_sub: Subgroup  # Sylow p-part <= group
    k_sub: Subgroup  # ker(P -> Aut C) = C_P(C) <= group
    a_p: Subgroup | None  # maximal cyclic subgroup of K normal in P (if basic)
    is_basic: bool

    def label(self) -> str:
        return f"p={self.p}|C{self.c_order}|Q{self.group.order}"


def _build_descriptor(parent: Group, p: int, sub: Subgroup, c_gen_parent: int,
                      c_order: int) -> QEDescriptor:
    qgroup = sub.as_group()
    qgroup.elements
    if c_order == 1:
        c_gen_local = 0
    else:
        c_gen_local = qgroup.element_index(parent.elements[c_gen_parent])
    c_sub = qgroup.subgroup([c_gen_local] if c_gen_local else [])
    p_sub = qgroup.sylow(p)
    if c_sub.order * p_sub.order != qgroup.order:
        raise InternalConsistencyError("Q is not C * P of the right order")
    if c_sub.order % p == 0 or gcd(c_sub.order, p_sub.order) != 1:
        raise InternalConsistencyError("cyclic part not coprime to p")
    # K = centralizer of C inside P (= kernel of P -> Aut C, C cyclic)
    k_ids = []
    inv = qgroup.inverse_table
    for g in sorted(p_sub.element_ids):
        if qgroup.mul_idx(qgroup.mul_idx(g, c_gen_local), inv[g]) == c_gen_local:
            k_ids.append(g)
    k_sub = Subgroup.from_element_ids(qgroup, k_ids)
    a_p = _maximal_cyclic_normal(qgroup, p_sub, k_sub)
    return QEDescriptor(
        parent=parent,
        p=p,
        sub=sub,
        group=qgroup,
        c_order=c_order,
        c_gen_local=c_gen_local,
        c_sub=c_sub,
        p_sub=p_sub,
        k_sub=k_sub,
        a_p=a_p,
        is_basic=a_p is not None,
    )


def _maximal_cyclic_normal(qgroup: Group, p_sub: Subgroup, k_sub: Subgroup) -> Subgroup | None:
    """Largest cyclic A <= K with [K:A] <= 2 and A normal in P, if any."""
    if k_sub.order == 1:
        return qgroup.trivial_subgroup()
    inv = qgroup.inverse_table
    p_gens = p_sub.generator_ids
    best = None
    for x in sorted(k_sub.element_ids):
        ids = frozenset(_cyclic_ids(qgroup, x))
        if 2 * len(ids) < k_sub.order:
            continue
        if k_sub.order % len(ids):
            continue
        normal = all(
            qgroup.mul_idx(qgroup.mul_idx(g, y), inv[g]) in ids
            for g in p_gens
            for y in ids
        )
        if not normal:
            continue
        if best is None or len(ids) > len(best[0]) or (
            len(ids) == len(best[0]) and sorted(ids) < sorted(best[0])
        ):
            best = (ids, x)
    if best is None:
        return None
    return Subgroup.from_element_ids(qgroup, sorted(best[0]))


def _cyclic_ids(g: Group, x: int) -> list[int]:
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = g.mul_idx(cur, x)
    return out


def maximal_qe_family(parent: Group, p: int) -> list[QEDescriptor]:
    """Maximal p-quasi-elementary subgroups Q = C x| Syl_p(N_G(C)), one per
    conjugacy class of cyclic C with p not dividing |C|.  Exact duplicates are
    always removed; conjugate duplicates are removed when the parent is small
    enough to test."""
    parent.elements
    syl_parent: Subgroup | None = None
    raw: list[tuple[Subgroup, int, int]] = []
    for cc in parent.cyclic_subgroup_classes():
        if cc.subgroup_order % p == 0:
            continue
        rep = parent.classes()[cc.rep_class].rep
        if cc.subgroup_order == 1:
            norm = parent.full_subgroup()
        else:
            norm = parent.normalizer_of_cyclic(cc.rep_class)
        if norm.order == parent.order:
            if syl_parent is None:
                syl_parent = parent.sylow(p)
            psub = syl_parent
            p_gen_ids = list(psub.generator_ids)
        else:
            ngroup = norm.as_group()
            psub_local = ngroup.sylow(p)
            p_gen_ids = [
                parent.element_index(ngroup.elements[i]) for i in psub_local.generator_ids
            ]
        seed = ([rep] if cc.subgroup_order > 1 else []) + p_gen_ids
        q = Subgroup.from_generators(parent, seed or [0])
        raw.append((q, rep if cc.subgroup_order > 1 else 0, cc.subgroup_order))
    # dedupe
    seen_sets: dict[frozenset[int], None] = {}
    kept: list[tuple[Subgroup, int, int]] = []
    for q, rep, c_order in raw:
        if q.element_ids in seen_sets:
            continue
        seen_sets[q.element_ids] = None
        kept.append((q, rep, c_order))
    if parent.order <= CONJUGACY_DEDUP_BOUND:
        dedup: list[tuple[Subgroup, int, int]] = []
        for q, rep, c_order in kept:
            if any(q.is_conjugate_to(q2) for q2, _, _ in dedup):
                continue
            dedup.append((q, rep, c_order))
        kept = dedup
    kept.sort(key=lambda t: (t[0].order, t[2], min(t[0].element_ids)))
    return [_build_descriptor(parent, p, q, rep, c_order) for q, rep, c_order in kept]


# ---------------------------------------------------------------------------
# local orders


@dataclass
class LocalGenerator:
    row_index: int
    ch_order: int  # order of tr tau in Char_Q(Q)/Perm(Q)
    c_order: int  # order of the rational hull in R_Q(Q)/Perm(Q)
    schur: int
    monomial_subgroup: Subgroup  # H <= Q (in Q's indexing)
    monomial_character: LinearCharacter


@dataclass
class LocalCH:
    desc: QEDescriptor
    table: RationalTable
    ch_orders: list[int]  # per table row
    c_orders: list[int]
    schur_indices: list[int]
    generators: list[LocalGenerator]  # rows with ch_order > 1
    agreement: dict
    warnings: list[str] = field(default_factory=list)

    def ch_group(self):
        from .lattice import FinAb

        return FinAb.from_orders([o for o in self.ch_orders if o > 1])

    def c_group(self):
        from .lattice import FinAb

        return FinAb.from_orders([o for o in self.c_orders if o > 1])

    def report(self) -> dict:
        d = self.desc
        qg = d.group
        return {
            "label": d.label(),
            "p": d.p,
            "order": qg.order,
            "c_order": d.c_order,
            "p_part_order": d.p_sub.order,
            "k_order": d.k_sub.order,
            "basic": d.is_basic,
            "generators": [
                {
                    "row": g.row_index,
                    "row_values": list(self.table.rows[g.row_index].values),
                    "ch_order": g.ch_order,
                    "c_order": g.c_order,
                    "schur": g.schur,
                    "monomial_subgroup_order": g.monomial_subgroup.order,
                    "monomial_character_order": g.monomial_character.order,
                }
                for g in self.generators
            ],
            "ch_group": self.ch_group().to_json(),
            "c_group": self.c_group().to_json(),
            "agreement": self.agreement,
            "warnings": self.warnings,
        }


def local_ch_berz(desc: QEDescriptor) -> list[int]:
    """Order of every Q-irreducible row in Char_Q(Q)/Perm(Q), as the gcd of
    its multiplicities in all permutation characters (Schur-free)."""
    qgroup = desc.group
    table = rational_table(qgroup)
    subs = qgroup.subgroup_classes()
    pcs = [perm_character(qgroup, s) for s in subs]
    orders = []
    for i in range(len(table.rows)):
        g = 0
        for pc in pcs:
            m = table.mu(i, pc)
            if m.denominator != 1 or m < 0:
                raise InternalConsistencyError("permutation multiplicity not a nonneg integer")
            g = gcd(g, int(m))
            if g == 1:
                break
        if g == 0 or qgroup.order % g:
            raise InternalConsistencyError("Berz order does not divide |Q| (Artin bound)")
        orders.append(g)
    return orders


def _psi_hull_dimension(desc: QEDescriptor, row_index: int) -> int:
    """phi(d) for the common order d of the constituents of the restriction
    of the row to the cyclic part C."""
    if desc.c_order == 1:
        return 1
    cgroup = desc.c_sub.as_group()
    ctab = rational_table(cgroup)
    res = restrict(rational_table(desc.group).row_classfunction(row_index), cgroup)
    orders = set()
    for j, crow in enumerate(ctab.rows):
        m = ctab.mu(j, res)
        if m:
            kernel = sum(
                c.size for c, v in zip(cgroup.classes(), crow.values) if v == crow.values[0]
            )
            orders.add(cgroup.order // kernel)
    if len(orders) != 1:
        raise InternalConsistencyError("restriction to C has mixed constituent orders")
    return totient(orders.pop())


def local_dimension_formula(desc: QEDescriptor, row_index: int,
                            oracle: SchurOracle | None) -> tuple[int, list[str]]:
    """Char_Q-order of the row by the dimension formula.

    order = dim(psi-hull) * min_j s(pi_j) * trpi_j(1) / trtau(1), minimising
    over the rational constituents pi_j of the restriction to the Sylow
    p-part.  Schur indices enter only for p = 2 and only on p-group rows,
    where the quaternionic FS test is exact.  Also asserts, Schur-free, the
    inner-product identity mu(row, Ind trpi_j) * trtau(1) = dim(psi-hull) *
    trpi_j(1) for every constituent, and that gcd and minimum agree.
    """
    qgroup = desc.group
    table = rational_table(qgroup)
    row = table.rows[row_index]
    warnings: list[str] = []
    dpsi = _psi_hull_dimension(desc, row_index)
    pgroup = desc.p_sub.as_group()
    ptab = rational_table(pgroup)
    res = restrict(table.row_classfunction(row_index), pgroup)
    candidates = []
    for j in range(len(ptab.rows)):
        m = ptab.mu(j, res)
        if m.denominator != 1:
            raise InternalConsistencyError("restriction multiplicity not integral")
        if m == 0:
            continue
        mu_direct = table.mu(row_index, induce(ptab.row_classfunction(j), qgroup))
        if mu_direct * row.values[0] != Fraction(dpsi * ptab.rows[j].values[0]):
            raise InternalConsistencyError(
                "inner-product identity mu(rho, Ind pi-hull) failed"
            )
        if desc.p == 2:
            s_j = 2 if ptab.rows[j].fs == -1 else 1
        else:
            s_j = 1
        candidates.append(s_j * ptab.rows[j].values[0])
    if not candidates:
        raise InternalConsistencyError("restriction to P has no constituents")
    vals = []
    for c in candidates:
        term = Fraction(dpsi * c, row.values[0])
        if term.denominator != 1:
            raise InternalConsistencyError("dimension-formula multiplicity not integral")
        vals.append(int(term))
    g = 0
    for v in vals:
        g = gcd(g, v)
    if g != min(vals):
        raise InternalConsistencyError("dimension-formula gcd/min disagreement")
    return min(vals), warnings


def local_ch_basic(desc: QEDescriptor) -> tuple[int, int] | None:
    """(row index, order) for the distinguished generator of a basic Q via
    the closed form |P| / (|A_p| * max{|H|: H <= P, H cap A_p = 1});
    None when Q is not basic."""
    if not desc.is_basic:
        return None
    qgroup = desc.group
    a_p = desc.a_p
    # A = C * A_p is cyclic; a faithful character of A
    if a_p.order == 1:
        a_gen = desc.c_gen_local
    elif desc.c_order == 1:
        a_gen = _cyclic_generator(qgroup, a_p)
    else:
        a_gen = qgroup.mul_idx(desc.c_gen_local, _cyclic_generator(qgroup, a_p))
    a_sub = qgroup.subgroup([a_gen] if a_gen else [])
    if a_sub.order != desc.c_order * a_p.order:
        raise InternalConsistencyError("C * A_p is not cyclic of the expected order")
    chi = LinearCharacter(
        subgroup=a_sub,
        kernel_ids=frozenset({0}),
        order=a_sub.order,
        generator=a_gen,
    )
    row_index = _match_induced_row(desc, a_sub, chi)
    pgroup = desc.p_sub.as_group()
    ap_ids_in_p = desc.a_p.element_ids
    best = 1
    for h in pgroup.subgroup_classes():
        ids_parent = {qgroup.element_index(pgroup.elements[i]) for i in h.element_ids}
        if len(ids_parent & ap_ids_in_p) == 1:
            best = max(best, h.order)
    num = desc.p_sub.order
    den = a_p.order * best
    if num % den:
        raise InternalConsistencyError("closed-form order is not an integer")
    return row_index, num // den


def _cyclic_generator(g: Group, sub: Subgroup) -> int:
    for x in sorted(sub.element_ids):
        if len(_cyclic_ids(g, x)) == sub.order:
            return x
    raise InternalConsistencyError("subgroup is not cyclic")


def _match_induced_row(desc: QEDescriptor, h_sub: Subgroup, chi: LinearCharacter) -> int:
    """Index of the Q-irreducible row rho with Ind_H^Q (tr chi) = m * rho."""
    qgroup = desc.group
    table = rational_table(qgroup)
    hgroup = h_sub.as_group()
    ind = induce(chi.trace_values(hgroup), qgroup)
    deg = qgroup.order // h_sub.order  # dim Ind chi (chi linear)
    for i, row in enumerate(table.rows):
        if row.degree != deg:
            continue
        m = Fraction(totient(chi.order), row.field_degree)
        if m.denominator == 1 and ind.values == tuple(m * v for v in row.values):
            return i
    raise InternalConsistencyError("induced character does not match a single row")


def monomial_pair(desc: QEDescriptor, row_index: int) -> tuple[Subgroup, LinearCharacter]:
    """A pair (H <= Q, linear chi) with Ind_H^Q chi equal to a complex
    constituent of the row.  Quasi-elementary groups are monomial, so the
    search cannot fail; the hit is verified by the induced-trace identity."""
    qgroup = desc.group
    table = rational_table(qgroup)
    row = table.rows[row_index]
    subs = qgroup.subgroup_classes()
    for h in sorted(subs, key=lambda s: (-s.order, sorted(s.element_ids))):
        if h.order * row.degree != qgroup.order:
            continue
        hgroup = h.as_group()
        ind_cache: dict[int, ClassFunction] = {}
        for chi in linear_character_orbits(h):
            m = Fraction(totient(chi.order), row.field_degree)
            if m.denominator != 1 or m == 0:
                continue
            ind = induce(chi.trace_values(hgroup), qgroup)
            if ind.values == tuple(m * v for v in row.values):
                return h, chi
    raise InternalConsistencyError(
        f"no monomial pair found for row {row_index} of {desc.label()} "
        "(impossible for an M-group)"
    )


def analyze_local(desc: QEDescriptor, oracle: SchurOracle | None,
                  check: bool = True) -> LocalCH:
    """Full local pipeline for one quasi-elementary subgroup."""
    qgroup = desc.group
    table = rational_table(qgroup)
    warnings: list[str] = []
    ch_orders = local_ch_berz(desc)
    agreement = {"berz": True, "dimension": None, "basic": None}
    if check:
        for i, o in enumerate(ch_orders):
            formula, w = local_dimension_formula(desc, i, oracle)
            warnings.extend(w)
            if formula != o:
                raise InternalConsistencyError(
                    f"dimension formula ({formula}) disagrees with Berz gcd ({o}) "
                    f"on row {i} of {desc.label()}"
                )
        agreement["dimension"] = True
        basic = local_ch_basic(desc)
        if basic is not None:
            bi, border = basic
            if ch_orders[bi] != border:
                raise InternalConsistencyError(
                    f"closed-form order {border} disagrees with Berz gcd "
                    f"{ch_orders[bi]} on row {bi} of {desc.label()}"
                )
            agreement["basic"] = True
    schur = []
    c_orders = []
    for i, o in enumerate(ch_orders):
        if desc.p != 2 and table.rows[i].fs == -1:
            raise InternalConsistencyError(
                "quaternionic row in an odd quasi-elementary group"
            )
        if desc.p == 2 and oracle is not None:
            s = oracle.index(table, i)
            if oracle.mode == "fs-heuristic" and s == 2:
                warnings.append(
                    f"fs-heuristic Schur index used for row {i} of {desc.label()}"
                )
        else:
            s = 1
        if o % s:
            raise InternalConsistencyError(
                f"Schur index {s} does not divide the Char_Q order {o} "
                f"(row {i} of {desc.label()})"
            )
        schur.append(s)
        c_orders.append(o // s)
    generators = []
    for i, o in enumerate(ch_orders):
        if o == 1:
            continue
        h, chi = monomial_pair(desc, i)
        generators.append(
            LocalGenerator(
                row_index=i,
                ch_order=o,
                c_order=c_orders[i],
                schur=schur[i],
                monomial_subgroup=h,
                monomial_character=chi,
            )
        )
    return LocalCH(
        desc=desc,
        table=table,
        ch_orders=ch_orders,
        c_orders=c_orders,
        schur_indices=schur,
        generators=generators,
        agreement=agreement,
        warnings=warnings,
    )
