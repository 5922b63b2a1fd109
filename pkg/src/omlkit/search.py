"""Level-synchronous enumeration of the 746496 classes of merged expressions.

A class id is ``n_B * 6**6 + m0 * 6**5 + ... + m5``.  The merged join acts
componentwise, so it factors into three small tables: classical OR on n_B
labels (16x16) and join_i on the MO2 triples (m0, m1, m2) and (m3, m4, m5)
(216x216 each).  Cost is the number of variable occurrences; constants and
complements are free.

Ties between equal-cost derivations are broken by the smaller key
``(nodes << 40) | (left << 20) | right``, where ``nodes`` is the AST size of
the join/complement form.  Keys are min-reduced, so results do not depend
on how work is split across threads.
"""
from __future__ import annotations

import csv
import logging
import os
import random
from dataclasses import dataclass, field
from pathlib import Path

os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")  # the bundled TBB is too old

import numba
import numpy as np
from numba import njit, prange

from .expr import Expr, Var, ONE, ZERO, mjoin, mmeet, neg, occurrences, parse, to_text
from .freeoml import N_CLASSES, OpTables, Septuple, build_tables, classify

log = logging.getLogger(__name__)

TABLE1 = (2, 4, 16, 224, 1926, 10568, 29444, 101168, 195380, 204296, 138584, 48852, 14272,
          1684, 76)
HALF = 216
NB_STRIDE = HALF * HALF
MAXKEY = np.iinfo(np.int64).max

ATOM, COMP, JOIN = 0, 1, 2
ATOM_EXPRS = (ZERO, ONE, Var("a"), Var("b"), neg(Var("a")), neg(Var("b")))
ATOM_TEXT = ("0", "1", "a", "b", "a'", "b'")


@dataclass(eq=False)
class JoinTables:
    bor: np.ndarray     # (16, 16) n_B labels
    hi: np.ndarray      # (216, 216)
    lo: np.ndarray
    comp: np.ndarray    # (N_CLASSES,) complement of a class id

    def join(self, x, y):
        nx, rx = np.divmod(x, NB_STRIDE)
        ny, ry = np.divmod(y, NB_STRIDE)
        return (self.bor[nx, ny] * NB_STRIDE + self.hi[rx // HALF, ry // HALF] * HALF
                + self.lo[rx % HALF, ry % HALF])


def join_tables(t: OpTables | None = None) -> JoinTables:
    t = t or build_tables()
    lob, bol = t.label_of_bits, t.bits_of_label
    labels = np.arange(16)
    bor = lob[bol[labels][:, None] | bol[labels][None, :]]
    mj = [t.mo2_join_table(i) for i in range(6)]
    trip = np.array([(p // 36, p // 6 % 6, p % 6) for p in range(HALF)])

    def half(offset):
        out = np.zeros((HALF, HALF), dtype=np.int64)
        for k in range(3):
            out = out * 6 + mj[offset + k][trip[:, k][:, None], trip[:, k][None, :]]
        return out

    ids = np.arange(N_CLASSES)
    nb, rest = np.divmod(ids, NB_STRIDE)
    comp = lob[15 ^ bol[nb]] * NB_STRIDE + (NB_STRIDE - 1 - rest)  # m -> 5 - m in every digit
    return JoinTables(bor.astype(np.int64), half(0), half(3), comp.astype(np.int64))


def _inverse(tab: np.ndarray):
    """CSR over (x, t): all y with tab[x, y] == t."""
    n = tab.shape[0]
    m = tab.max() + 1
    key = (np.arange(n)[:, None] * m + tab).ravel()
    ys = np.tile(np.arange(tab.shape[1]), n)
    order = np.argsort(key, kind="stable")
    offsets = np.zeros(n * m + 1, dtype=np.int64)
    np.add.at(offsets, key + 1, 1)
    return np.cumsum(offsets), ys[order].astype(np.int64), m


# ---------- kernels ----------

@njit(parallel=True, cache=True)
def _forward(xs, ys, status, nodes, bor, hi, lo, keys):
    nw = keys.shape[0]
    nx = xs.shape[0]
    for w in prange(nw):
        kw = keys[w]
        for i in range(w, nx, nw):
            x = xs[i]
            bx = x // NB_STRIDE
            r = x % NB_STRIDE
            hx = r // HALF
            lx = r % HALF
            nodx = nodes[x] + 1
            for y in ys:
                by = y // NB_STRIDE
                ry = y % NB_STRIDE
                t = bor[bx, by] * NB_STRIDE + hi[hx, ry // HALF] * HALF + lo[lx, ry % HALF]
                if status[t] < 0:
                    key = ((nodx + nodes[y]) << 40) | (x << 20) | y
                    if key < kw[t]:
                        kw[t] = key


@njit(parallel=True, cache=True)
def _backward(targets, lists, bounds, k_of, status, nodes,
              nb_off, nb_val, nb_m, hi_off, hi_val, hi_m, lo_off, lo_val, lo_m, out):
    """For each missing target, the best join x|y with x in list j and y of level k_of[j]."""
    for ti in prange(targets.shape[0]):
        t = targets[ti]
        bt = t // NB_STRIDE
        rt = t % NB_STRIDE
        ht = rt // HALF
        lt = rt % HALF
        best = MAXKEY
        for j in range(bounds.shape[0] - 1):
            k = k_of[j]
            for p in range(bounds[j], bounds[j + 1]):
                x = lists[p]
                bx = x // NB_STRIDE
                rx = x % NB_STRIDE
                cb = bx * nb_m + bt
                ch = (rx // HALF) * hi_m + ht
                cl = (rx % HALF) * lo_m + lt
                if nb_off[cb] == nb_off[cb + 1] or hi_off[ch] == hi_off[ch + 1] \
                        or lo_off[cl] == lo_off[cl + 1]:
                    continue
                for u in range(nb_off[cb], nb_off[cb + 1]):
                    for v in range(hi_off[ch], hi_off[ch + 1]):
                        base = nb_val[u] * NB_STRIDE + hi_val[v] * HALF
                        for w in range(lo_off[cl], lo_off[cl + 1]):
                            y = base + lo_val[w]
                            if status[y] == k:
                                key = ((nodes[x] + nodes[y] + 1) << 40) | (x << 20) | y
                                if key < best:
                                    best = key
        out[ti] = best


# ---------- table ----------

@dataclass(eq=False)
class ClassTable:
    cost: np.ndarray                 # int8, -1 if absent
    kind: np.ndarray | None = None   # ATOM / COMP / JOIN
    left: np.ndarray | None = None
    right: np.ndarray | None = None
    nodes: np.ndarray | None = None
    texts: list | None = field(default=None, repr=False)
    max_cost: int = 14

    @property
    def complete(self) -> bool:
        return bool((self.cost >= 0).all())

    def histogram(self) -> list[int]:
        c = self.cost[self.cost >= 0]
        return np.bincount(c, minlength=int(c.max()) + 1 if c.size else 0).tolist()

    def __contains__(self, cid) -> bool:
        return bool(self.cost[cid] >= 0)

    def entry_text(self, cid: int) -> str:
        if self.texts is not None:
            return self.texts[cid]
        return to_text(self.expr(cid))

    def expr(self, cid: int, negated: bool = False) -> Expr:
        """Representative, printed with meets where a complement sits over a join."""
        if self.cost[cid] < 0:
            raise KeyError(f"class {Septuple.from_id(cid)} is not in the table")
        if self.kind is None:
            e = parse(self.texts[cid])
            return neg(e) if negated else e
        k = self.kind[cid]
        if k == ATOM:
            e = ATOM_EXPRS[self.left[cid]]
            return neg(e) if negated else e
        if k == COMP:
            return self.expr(int(self.left[cid]), not negated)
        x, y = int(self.left[cid]), int(self.right[cid])
        if negated:
            return mmeet(self.expr(x, True), self.expr(y, True))
        return mjoin(self.expr(x), self.expr(y))

    def all_texts(self) -> list[str]:
        """Representatives of every class, built bottom-up with sharing."""
        if self.texts is not None:
            return self.texts
        pos: list = [None] * N_CLASSES
        negs: dict = {}

        def text(c, negated):
            if not negated:
                return pos[c]
            if c not in negs:
                k = self.kind[c]
                if k == ATOM:
                    negs[c] = to_text(neg(ATOM_EXPRS[self.left[c]]))
                elif k == COMP:
                    negs[c] = pos[self.left[c]]
                else:
                    negs[c] = f"({text(self.left[c], True)} & {text(self.right[c], True)})"
            return negs[c]

        order = np.lexsort((self.kind == COMP, self.cost))  # joins before complements
        for c in order.tolist():
            k = self.kind[c]
            if self.cost[c] < 0:
                continue
            if k == ATOM:
                pos[c] = ATOM_TEXT[self.left[c]]
            elif k == COMP:
                pos[c] = text(int(self.left[c]), True)
            else:
                pos[c] = f"({pos[self.left[c]]} | {pos[self.right[c]]})"
        return pos


def representative(t: ClassTable, s: Septuple | int) -> Expr:
    cid = s.class_id if isinstance(s, Septuple) else int(s)
    return t.expr(cid)


def enumerate_classes(max_cost: int = 14, tables: OpTables | None = None, workers: int = 1,
                      backward: bool | int | None = None) -> ClassTable:
    """``backward``: None picks the cheaper pass per level; False never uses the
    target-driven pass; an int uses it from that level on (True = every level)."""
    t = tables or build_tables()
    jt = join_tables(t)
    status = np.full(N_CLASSES, -1, dtype=np.int8)
    kind = np.zeros(N_CLASSES, dtype=np.int8)
    left = np.zeros(N_CLASSES, dtype=np.int64)
    right = np.zeros(N_CLASSES, dtype=np.int64)
    nodes = np.zeros(N_CLASSES, dtype=np.int64)
    levels: list[np.ndarray] = []

    def put_atoms(codes, level):
        ids = []
        for code in codes:
            cid = classify(ATOM_EXPRS[code], t).class_id
            status[cid], kind[cid], left[cid] = level, ATOM, code
            nodes[cid] = 1 if code < 4 else 2
            ids.append(cid)
        levels.append(np.array(sorted(ids), dtype=np.int64))

    put_atoms((0, 1), 0)
    if max_cost >= 1:
        put_atoms((2, 3, 4, 5), 1)
    inv = None
    workers = max(1, int(workers))
    numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))

    for n in range(2, max_cost + 1):
        missing = int((status < 0).sum())
        if missing == 0:
            break
        pairs = [(j, n - j) for j in range(1, n)]
        fwd_work = sum(len(levels[j]) * len(levels[k]) for j, k in pairs)
        bwd_work = 4 * missing * sum(len(levels[j]) for j, _ in pairs)
        if backward is None:
            use_bwd = bwd_work < fwd_work
        elif backward is False:
            use_bwd = False
        else:
            use_bwd = n >= int(backward)
        if use_bwd:
            if inv is None:
                inv = [_inverse(jt.bor), _inverse(jt.hi), _inverse(jt.lo)]
            targets = np.flatnonzero(status < 0).astype(np.int64)
            lists = np.concatenate([levels[j] for j, _ in pairs])
            bounds = np.cumsum([0] + [len(levels[j]) for j, _ in pairs]).astype(np.int64)
            k_of = np.array([k for _, k in pairs], dtype=np.int64)
            out = np.empty(len(targets), dtype=np.int64)
            (nbo, nbv, nbm), (hio, hiv, him), (loo, lov, lom) = inv
            _backward(targets, lists, bounds, k_of, status, nodes,
                      nbo, nbv, nbm, hio, hiv, him, loo, lov, lom, out)
            found = out < MAXKEY
            new, keys = targets[found], out[found]
        else:
            keys_w = np.full((workers, N_CLASSES), MAXKEY, dtype=np.int64)
            for j, k in pairs:
                _forward(levels[j], levels[k], status, nodes, jt.bor, jt.hi, jt.lo, keys_w)
            best = keys_w.min(axis=0)
            new = np.flatnonzero(best < MAXKEY)
            keys = best[new]
        log.info("level %d: %s pass, %d join-derived", n, "backward" if use_bwd else "forward",
                 len(new))
        jn = keys >> 40
        jx = (keys >> 20) & 0xFFFFF
        jy = keys & 0xFFFFF
        status[new] = n
        kind[new], left[new], right[new], nodes[new] = JOIN, jx, jy, jn
        _close_level(n, new, status, kind, left, right, nodes, jt, levels[0])
        levels.append(np.flatnonzero(status == n).astype(np.int64))

    cost = status.copy()
    table = ClassTable(cost, kind, left, right, nodes, max_cost=max_cost)
    if not table.complete:
        log.info("enumeration stopped at cost %d with %d classes missing", max_cost,
                 int((cost < 0).sum()))
    return table


def _close_level(n, joined, status, kind, left, right, nodes, jt, consts):
    """Complements and joins with constants add no cost; iterate to a fixpoint."""
    comp = jt.comp
    frontier = joined
    while frontier.size:
        added = []
        # complement of a join-derived class at this level
        src = frontier[kind[frontier] == JOIN]
        c = comp[src]
        cand = src[(status[c] < 0) | ((status[c] == n) & (kind[c] == JOIN) & (nodes[src] + 1 < nodes[c]))]
        if cand.size:
            tgt = comp[cand]
            fresh = tgt[status[tgt] < 0]
            status[tgt] = n
            kind[tgt], left[tgt], right[tgt], nodes[tgt] = COMP, cand, 0, nodes[cand] + 1
            added.append(fresh)
        # joins with 0 and 1, both orders
        layer = np.flatnonzero(status == n)
        for k in consts:
            for a, b in ((layer, np.full_like(layer, k)), (np.full_like(layer, k), layer)):
                r = jt.join(a, b)
                hit = status[r] < 0
                if hit.any():
                    r, a, b = r[hit], a[hit], b[hit]
                    r, first = np.unique(r, return_index=True)
                    status[r] = n
                    kind[r], left[r], right[r] = JOIN, a[first], b[first]
                    nodes[r] = nodes[a[first]] + nodes[b[first]] + 1
                    added.append(r)
        frontier = np.concatenate(added) if added else np.empty(0, dtype=np.int64)


# ---------- queries ----------

def parse_pattern(text: str):
    parts = [p.strip() for p in text.replace(" ", "").split(",")]
    if len(parts) != 7 or parts[0] in (".", ""):
        raise ValueError(f"pattern needs n_B and six MO2 slots: {text!r}")
    vals = [None if p == "." else int(p) for p in parts]
    if not 0 <= vals[0] < 16 or any(v is not None and not 0 <= v < 6 for v in vals[1:]):
        raise ValueError(f"pattern value out of range: {text!r}")
    return vals


def matching_ids(pattern) -> np.ndarray:
    vals = parse_pattern(pattern) if isinstance(pattern, str) else list(pattern)
    ids = np.arange(vals[0] * 6 ** 6, (vals[0] + 1) * 6 ** 6)
    mask = np.ones(ids.size, dtype=bool)
    for k, v in enumerate(vals[1:]):
        if v is not None:
            mask &= (ids // 6 ** (5 - k)) % 6 == v
    return ids[mask]


def extract_subalgebra(t: ClassTable, pattern) -> list[tuple[Septuple, Expr, int]]:
    ids = matching_ids(pattern)
    ids = ids[t.cost[ids] >= 0]
    if not ids.size:
        raise LookupError(f"no class in the table matches {pattern}")
    best = t.cost[ids].min()
    return [(Septuple.from_id(int(c)), t.expr(int(c)), int(best)) for c in ids[t.cost[ids] == best]]


# ---------- persistence ----------

ATLAS_HEADER = ["classId", "n_B", "m0 m1 m2 m3 m4 m5", "cost", "representative"]


def export_atlas(t: ClassTable, path) -> None:
    if not t.complete:
        raise ValueError("refusing to export an incomplete table")
    texts = t.all_texts()
    with open(path, "w", newline="") as fh:
        fh.write("\t".join(ATLAS_HEADER) + "\n")
        for cid in range(N_CLASSES):
            s = Septuple.from_id(cid)
            fh.write(f"{cid}\t{s.nb}\t{' '.join(map(str, s.m))}\t{t.cost[cid]}\t{texts[cid]}\n")


class AtlasError(ValueError):
    pass


def import_atlas(path, sample: int = 1000, seed: int = 0, tables=None) -> ClassTable:
    """Read an atlas and re-classify ``sample`` random rows (all rows if sample < 0)."""
    cost = np.full(N_CLASSES, -1, dtype=np.int8)
    texts = [None] * N_CLASSES
    with open(path, newline="") as fh:
        rows = csv.reader(fh, delimiter="\t")
        header = next(rows, None)
        if header != ATLAS_HEADER:
            raise AtlasError(f"{path}: bad header {header!r}")
        for lineno, row in enumerate(rows, 2):
            try:
                cid, nb, ms, c, text = row
                s = Septuple(int(nb), tuple(int(v) for v in ms.split()))
                cid = int(cid)
            except ValueError as err:
                raise AtlasError(f"{path}:{lineno}: malformed row ({err})") from None
            if s.class_id != cid:
                raise AtlasError(f"{path}:{lineno}: class id {cid} does not match septuple {s}")
            cost[cid] = int(c)
            texts[cid] = text
    table = ClassTable(cost, texts=texts)
    present = np.flatnonzero(cost >= 0).tolist()
    check = present if sample < 0 else random.Random(seed).sample(present, min(sample, len(present)))
    for cid in check:
        e = parse(texts[cid])
        if classify(e, tables).class_id != cid or occurrences(e) != cost[cid]:
            raise AtlasError(f"{path}: representative of class {Septuple.from_id(cid)} "
                             f"does not re-classify ({texts[cid]})")
    return table


def write_histogram(t: ClassTable, path_or_file) -> None:
    lines = [f"{c}\t{n}" for c, n in enumerate(t.histogram())]
    text = "\n".join(["cost\tcount", *lines]) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        Path(path_or_file).write_text(text)
