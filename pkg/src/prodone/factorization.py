"""Atoms of the product-one monoid, Davenport constant, and sets of lengths.

The workhorse is an exhaustive enumeration of all product-one sequences up to
a length cap, as packed exponent vectors. Identity-free sequences suffice:
inserting copies of the identity never changes the set of products, so a
sequence is product-one iff its identity-free part is, and the only atom
containing the identity is the length-1 sequence (1).

Atoms searched up to length cap |G| are exhaustive: in any product-one
ordering of an atom the partial products before the end must be pairwise
distinct (a repeat would cut out a proper product-one segment whose
complement is product-one as well), so atoms never exceed length |G|.
"""

from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass

from .errors import BudgetExceededError, CatalogError, ParseError
from .groups import GroupTable
from .sequences import Sequence, _mask_mul_slow, _submultiset_products

__all__ = [
    "AtomCatalog",
    "Fingerprint",
    "LengthSystem",
    "is_atom",
    "enumerate_atoms",
    "large_davenport",
    "factorizations",
    "set_of_lengths",
    "length_system",
    "fingerprint",
    "product_one_vectors",
    "DEFAULT_SEARCH_BUDGET",
]

DEFAULT_SEARCH_BUDGET = 200_000_000

_SHIFT = 5          # bits per exponent slot in packed vectors
_SLOT = (1 << _SHIFT) - 1

_CACHE_LOCK = threading.Lock()
_BALL_CACHE: dict = {}
_DAVENPORT_CACHE: dict = {}


def _pack(exponents) -> int:
    key = 0
    for e, v in enumerate(exponents):
        key |= v << (_SHIFT * e)
    return key


def _unpack(key: int, order: int) -> tuple:
    return tuple((key >> (_SHIFT * e)) & _SLOT for e in range(order))


# -- exhaustive product-one enumeration -------------------------------------------


def _completion_reach(group: GroupTable, quotient: GroupTable, proj, max_len: int):
    """Cumulative reachability masks over the abelian quotient.

    ``rcum[g][r]`` has bit t set iff some multiset of at most r elements, all
    with id >= g, has image-sum t in the quotient. Used to prune branches of
    the canonical enumeration that cannot reach image-sum zero anymore.
    """
    n = group.order
    qmasks = quotient._mul_mask_tables()
    qtab = quotient.table

    def qmul(mask, h):
        return qmasks[h][mask] if qmasks else _mask_mul_slow(mask, h, qtab)

    exact = [[1] + [0] * max_len]  # elements >= n: only the empty multiset
    for g in range(n - 1, 0, -1):
        prev = exact[-1]
        qg = proj[g]
        row = [1] + [0] * max_len
        for k in range(1, max_len + 1):
            row[k] = prev[k] | qmul(row[k - 1], qg)
        exact.append(row)
    exact.reverse()  # exact[g - 1] is the row for "elements >= g"
    rcum = []
    for row in exact:
        acc = 0
        crow = []
        for k in range(max_len + 1):
            acc |= row[k]
            crow.append(acc)
        rcum.append(crow)
    return rcum  # rcum[g - 1][r] for g in 1..n


def _enumerate_po(group: GroupTable, max_len: int, budget: int) -> dict:
    """All identity-free product-one packed vectors of length <= max_len."""
    n = group.order
    if max_len == 0 or n == 1:
        return {}
    if max_len > _SLOT:
        raise BudgetExceededError(
            f"length cap {max_len} exceeds the packed-multiplicity limit {_SLOT}",
            attempted=max_len, budget=_SLOT)
    if group.is_abelian:
        quotient, proj = group, tuple(range(n))
    else:
        quotient, proj = group.abelianization_map()
    rcum = _completion_reach(group, quotient, proj, max_len)
    qtab = quotient.table
    qinv = tuple(quotient.inv(t) for t in range(quotient.order))
    bits = tuple(1 << (_SHIFT * e) for e in range(n))
    shifts = tuple(_SHIFT * e for e in range(n))
    out: dict[int, int] = {}
    counter = [0]

    if group.is_abelian:
        tab = group.table

        def rec_ab(last, rem, key, ln, acc):
            for g in range(last, n):
                t = tab[acc][g]
                r = rem - 1
                if not (rcum[g - 1][r] >> qinv[t]) & 1:
                    continue
                counter[0] += 1
                if counter[0] > budget:
                    raise BudgetExceededError(
                        f"product-one enumeration exceeded budget of {budget} states",
                        attempted=counter[0], budget=budget, partial=dict(out))
                key_g = key + bits[g]
                if t == 0:
                    out[key_g] = ln + 1
                if r:
                    rec_ab(g, r, key_g, ln + 1, t)

        rec_ab(1, max_len, 0, 0, 0)
        return out

    masks = group._mul_mask_tables()
    tab = group.table
    levels = [dict() for _ in range(max_len + 1)]
    levels[0][0] = 1  # empty sub-multiset achieves exactly the identity
    exps = [0] * n
    supp: list[int] = []

    def push(g, cur_len):
        sg = shifts[g]
        gbit = bits[g]
        vg = exps[g]
        new_supp = supp[-1] != g if supp else True
        if new_supp:
            supp.append(g)
        added = []
        for lvl in range(cur_len + 1):
            level = levels[lvl]
            nxt = levels[lvl + 1]
            for key in level:
                if (key >> sg) & _SLOT != vg:
                    continue
                nk = key + gbit
                acc = 0
                for h in supp:
                    if (nk >> shifts[h]) & _SLOT:
                        prev = level[nk - bits[h]]
                        acc |= masks[h][prev] if masks else _mask_mul_slow(prev, h, tab)
                nxt[nk] = acc
                added.append((lvl + 1, nk))
        exps[g] = vg + 1
        counter[0] += len(added)
        if counter[0] > budget:
            _pop(g, added, new_supp)
            raise BudgetExceededError(
                f"product-one enumeration exceeded budget of {budget} states",
                attempted=counter[0], budget=budget, partial=dict(out))
        return added, new_supp

    def _pop(g, added, new_supp):
        exps[g] -= 1
        if new_supp:
            supp.pop()
        for lvl, key in added:
            del levels[lvl][key]

    def rec(last, rem, key, ln, ab):
        for g in range(last, n):
            t = qtab[ab][proj[g]]
            r = rem - 1
            if not (rcum[g - 1][r] >> qinv[t]) & 1:
                continue
            added, new_supp = push(g, ln)
            key_g = key + bits[g]
            if levels[ln + 1][key_g] & 1:
                out[key_g] = ln + 1
            if r:
                rec(g, r, key_g, ln + 1, t)
            _pop(g, added, new_supp)

    rec(1, max_len, 0, 0, 0)
    return out


def product_one_vectors(group: GroupTable, max_len: int, budget: int | None = None) -> dict:
    """Packed exponent vectors of all identity-free product-one sequences.

    Maps packed vector -> length, for lengths 1..max_len. Cached per group at
    the largest bound computed so far; treat the result as read-only.
    """
    if max_len < 0:
        raise ValueError(f"negative length bound {max_len}")
    budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    with _CACHE_LOCK:
        hit = _BALL_CACHE.get(group)
    if hit is not None and hit[0] >= max_len:
        if hit[0] == max_len:
            return hit[1]
        return {k: ln for k, ln in hit[1].items() if ln <= max_len}
    out = _enumerate_po(group, max_len, budget)
    with _CACHE_LOCK:
        hit = _BALL_CACHE.get(group)
        if hit is None or hit[0] < max_len:
            _BALL_CACHE[group] = (max_len, out)
    return out


# -- atoms ------------------------------------------------------------------------


def is_atom(seq: Sequence, max_states: int | None = None) -> bool:
    """Whether ``seq`` is an atom: product-one, nonempty, and unsplittable.

    A split is a proper nonempty sub-multiset that is product-one with a
    product-one complement.
    """
    if seq.is_empty():
        return False
    if seq.exponents[0]:
        return seq.length == 1
    dp, supp = _submultiset_products(seq, max_states)
    full = tuple(seq.exponents[e] for e in supp)
    if not dp[full] & 1:
        return False
    zero = (0,) * len(supp)
    for key, mask in dp.items():
        if key == zero or key == full or not mask & 1:
            continue
        comp = tuple(f - k for f, k in zip(full, key))
        if dp[comp] & 1:
            return False
    return True


def _split_exists(key: int, ln: int, items, ball: dict) -> bool:
    """Whether the packed vector splits into two product-one parts.

    ``items`` lists (bit, mult) per support element; ``ball`` must contain all
    identity-free product-one vectors of length < ln.
    """
    half = ln // 2
    k = len(items)

    def rec(pos, sub, sublen):
        if pos == k:
            return sublen and sub in ball and (key - sub) in ball
        bit, mult = items[pos]
        cur = sub
        for take in range(0, mult + 1):
            if sublen + take > half:
                break
            if rec(pos + 1, cur, sublen + take):
                return True
            cur += bit
        return False

    return rec(0, 0, 0)


def _atom_keys(group: GroupTable, max_len: int, budget: int | None) -> dict:
    ball = product_one_vectors(group, max_len, budget)
    atoms = {}
    for key, ln in ball.items():
        items = []
        rest = key
        e = 0
        while rest:
            v = rest & _SLOT
            if v:
                items.append((1 << (_SHIFT * e), v))
            rest >>= _SHIFT
            e += 1
        if not _split_exists(key, ln, items, ball):
            atoms[key] = ln
    return atoms


@dataclass(frozen=True)
class AtomCatalog:
    """All atoms over a group up to a length bound."""

    group: GroupTable
    max_length: int
    exhaustive: bool
    atoms_by_length: dict

    def counts(self) -> dict:
        return {ln: len(atoms) for ln, atoms in sorted(self.atoms_by_length.items())}

    def all_atoms(self):
        for ln in sorted(self.atoms_by_length):
            yield from self.atoms_by_length[ln]

    def max_atom_length(self) -> int:
        lengths = [ln for ln, atoms in self.atoms_by_length.items() if atoms]
        return max(lengths) if lengths else 0

    def restrict(self, max_length: int) -> "AtomCatalog":
        if max_length > self.max_length:
            raise CatalogError(
                f"cannot restrict catalog of bound {self.max_length} up to {max_length}")
        kept = {ln: atoms for ln, atoms in self.atoms_by_length.items() if ln <= max_length}
        return AtomCatalog(self.group, max_length, self.exhaustive, kept)

    # -- persistence ---------------------------------------------------------------

    FORMAT_HEADER = "prodone-atoms 1"

    def save(self, path) -> None:
        """Write the catalog as stable text; atomic via temp-file rename."""
        lines = [self.FORMAT_HEADER,
                 f"group {self.group.table_hash()}",
                 f"order {self.group.order}",
                 f"max_length {self.max_length}",
                 f"exhaustive {int(self.exhaustive)}"]
        for ln in sorted(self.atoms_by_length):
            for atom in self.atoms_by_length[ln]:
                vec = " ".join(str(v) for v in atom.exponents)
                lines.append(f"atom {ln} {vec}")
        text = "\n".join(lines) + "\n"
        path = os.fspath(path)
        directory = os.path.dirname(path) or "."
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".atoms-")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path, group: GroupTable) -> "AtomCatalog":
        with open(os.fspath(path), "r", encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if not lines or lines[0] != cls.FORMAT_HEADER:
            raise ParseError(f"not a prodone atom catalog: {path}")
        fields = {}
        body = []
        for ln in lines[1:]:
            tokens = ln.split()
            if tokens[0] == "atom":
                body.append(tokens)
            elif len(tokens) == 2:
                fields[tokens[0]] = tokens[1]
            else:
                raise ParseError(f"bad catalog line {ln!r}")
        for need in ("group", "order", "max_length", "exhaustive"):
            if need not in fields:
                raise ParseError(f"catalog missing field {need!r}")
        if fields["group"] != group.table_hash():
            raise CatalogError("catalog was built for a different group table")
        if int(fields["order"]) != group.order:
            raise CatalogError(f"catalog order {fields['order']} != group order {group.order}")
        atoms_by_length: dict[int, list] = {}
        for tokens in body:
            ln = int(tokens[1])
            vec = [int(v) for v in tokens[2:]]
            if len(vec) != group.order:
                raise ParseError(f"atom record has {len(vec)} exponents, expected {group.order}")
            seq = Sequence(group, vec)
            if seq.length != ln:
                raise ParseError(f"atom record length {ln} does not match its vector")
            atoms_by_length.setdefault(ln, []).append(seq)
        final = {ln: tuple(sorted(atoms, key=lambda s: s.exponents))
                 for ln, atoms in atoms_by_length.items()}
        return cls(group, int(fields["max_length"]), bool(int(fields["exhaustive"])), final)


def _catalog_from_keys(group: GroupTable, keys: dict, max_length: int,
                       exhaustive: bool) -> AtomCatalog:
    by_length: dict[int, list] = {}
    for key, ln in keys.items():
        by_length.setdefault(ln, []).append(Sequence(group, _unpack(key, group.order)))
    if max_length >= 1:
        one = [0] * group.order
        one[0] = 1
        by_length.setdefault(1, []).append(Sequence(group, one))
    final = {ln: tuple(sorted(atoms, key=lambda s: s.exponents))
             for ln, atoms in by_length.items()}
    return AtomCatalog(group, max_length, exhaustive, final)


def enumerate_atoms(group: GroupTable, max_length: int, budget: int | None = None) -> AtomCatalog:
    """Exhaustive atom catalog up to ``max_length``.

    Enumerates canonical (non-decreasing) identity-free multisets with
    reachability pruning, keeps the product-one ones, and discards any that
    split. On budget exhaustion the raised error carries a partial,
    non-exhaustive catalog of individually re-verified atoms.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    try:
        keys = _atom_keys(group, max_length, budget)
    except BudgetExceededError as err:
        partial_keys = {}
        for key, ln in (err.partial or {}).items():
            try:
                if is_atom(Sequence(group, _unpack(key, group.order))):
                    partial_keys[key] = ln
            except BudgetExceededError:
                continue
        err.partial = _catalog_from_keys(group, partial_keys, max_length, exhaustive=False)
        raise
    return _catalog_from_keys(group, keys, max_length, exhaustive=True)


def large_davenport(group: GroupTable, budget: int | None = None) -> int:
    """Largest length of an atom (1 for the trivial group).

    Exhaustive search up to the proven cap |G|; see the module docstring for
    the termination argument.
    """
    with _CACHE_LOCK:
        if group in _DAVENPORT_CACHE:
            return _DAVENPORT_CACHE[group]
    catalog = enumerate_atoms(group, group.order, budget)
    value = catalog.max_atom_length()
    with _CACHE_LOCK:
        _DAVENPORT_CACHE[group] = value
    return value


# -- factorizations and lengths ---------------------------------------------------


def factorizations(b: Sequence, catalog: AtomCatalog):
    """All multisets of atoms concatenating to ``b``.

    Each factorization is a tuple of atoms in a fixed canonical order; the
    list of factorizations is itself deterministic. Requires an exhaustive
    catalog covering length(b).
    """
    if catalog.group != b.group:
        raise CatalogError("catalog and sequence use different groups")
    if not catalog.exhaustive or catalog.max_length < b.length:
        raise CatalogError(
            f"need an exhaustive catalog to length {b.length}, "
            f"have bound {catalog.max_length} (exhaustive={catalog.exhaustive})")
    if not b.is_product_one():
        raise ValueError("cannot factor a sequence that is not product-one")
    atoms = [a for a in catalog.all_atoms() if a.length <= b.length and a.divides(b)]
    results = []
    chosen: list = []
    target = b.exponents

    def rec(rem, max_idx, rem_len):
        if rem_len == 0:
            results.append(tuple(chosen))
            return
        for i in range(max_idx, -1, -1):
            a = atoms[i]
            if a.length > rem_len:
                continue
            exps = a.exponents
            if all(x <= r for x, r in zip(exps, rem)):
                chosen.append(a)
                rec(tuple(r - x for r, x in zip(rem, exps)), i, rem_len - a.length)
                chosen.pop()

    rec(target, len(atoms) - 1, b.length)
    return results


def set_of_lengths(b: Sequence, catalog: AtomCatalog) -> tuple:
    """Sorted factorization lengths L(b); {0} for the empty sequence."""
    return tuple(sorted({len(f) for f in factorizations(b, catalog)}))


@dataclass(frozen=True)
class LengthSystem:
    """All sets of lengths realized by nonempty product-one sequences up to a bound."""

    bound: int
    sets: tuple

    def __contains__(self, lengths) -> bool:
        return tuple(sorted(lengths)) in self.sets


def length_system(group: GroupTable, bound: int, budget: int | None = None) -> LengthSystem:
    """L(G) truncated to sequences of length <= bound (empty sequence excluded)."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    catalog = enumerate_atoms(group, bound, budget)
    ball = product_one_vectors(group, bound, budget)
    collected = set()
    entries = [(0, 0)] + sorted((ln, key) for key, ln in ball.items())
    for ln, key in entries:
        base = set_of_lengths(Sequence(group, _unpack(key, group.order)), catalog)
        start = 1 if ln == 0 else 0  # identity padding; skip the fully empty sequence
        for pad in range(start, bound - ln + 1):
            collected.add(tuple(x + pad for x in base))
    return LengthSystem(bound, tuple(sorted(collected)))


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants of the product-one monoid."""

    atom_counts: tuple
    davenport: int
    abelianization_profile: tuple

    def __post_init__(self):
        if len(self.atom_counts) != self.davenport or (
                self.atom_counts and self.atom_counts[-1] == 0):
            raise ValueError("atom_counts must extend exactly to the Davenport constant")


def fingerprint(group: GroupTable, budget: int | None = None) -> Fingerprint:
    """Atom counts per length, the Davenport constant, and the abelianization profile."""
    d = large_davenport(group, budget)
    catalog = enumerate_atoms(group, group.order, budget)
    counts = tuple(len(catalog.atoms_by_length.get(ln, ())) for ln in range(1, d + 1))
    quotient = group.abelianization()
    profile = tuple(sorted(quotient.element_order(a) for a in quotient.elements()))
    return Fingerprint(atom_counts=counts, davenport=d, abelianization_profile=profile)
