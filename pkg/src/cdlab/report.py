"""Full CD analysis of a group file, DOT export and the on-disk result cache."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, bitset
from .bilinear import BilinearModel
from .cd import CDLattice, cd_from_subgroups, cd_lattice
from .errors import RadicalNotTrivial
from .groupfile import GroupFile, dumps
from .gfp import rank
from .groups import ELEMENT_CAP, TABLE_CAP, Class2Data
from .subgroups import ORACLE_CAP, all_subgroups, center, commutator_subgroup, derived_subgroup, whole
from .verify import quasi_antichain_intervals, theorem_constraints_check, verify_interval_propositions, \
    verify_lattice_axioms

ENGINE_VERSION = f"cdlab-{__version__}"


@dataclass(frozen=True)
class AnalysisOptions:
    oracle: bool = False
    fast: bool = False
    max_order: int = ELEMENT_CAP
    timing: bool = False

    def key(self) -> str:
        return json.dumps({"oracle": self.oracle, "fast": self.fast, "max_order": self.max_order,
                           "timing": self.timing}, sort_keys=True)


@dataclass
class AnalysisReport:
    label: str
    path: str
    group: dict
    lattice: CDLattice = field(repr=False)
    checks: dict = field(default_factory=dict)
    timing: dict | None = None

    @property
    def passed(self) -> bool:
        return all(v.get("passed", True) for v in self.checks.values())

    def to_dict(self) -> dict:
        L = self.lattice
        flags = L.abelian_flags()
        members = [{"index": k, "order": str(m.order), "id": canonical_id(L, m.bits),
                    "abelian": flags[k], "dual": L.duality[k]} for k, m in enumerate(L.members)]
        out = {
            "engine": ENGINE_VERSION,
            "input": self.label,
            "path": self.path,
            "group": self.group,
            "m_star": str(L.m_star.value),
            "members": members,
            "covers": [list(c) for c in L.covers],
            "shape": L.shape().to_dict(),
            "duality": list(L.duality),
            "checks": self.checks,
            "passed": self.passed,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def canonical_id(L: CDLattice, bits: int) -> str:
    G = L.group
    if isinstance(G, BilinearModel):
        return G.canonical_id(bits)
    idx = np.asarray(bitset.to_indices(bits, G.size), dtype="<i8")
    return hashlib.sha256(idx.tobytes()).hexdigest()[:16]


def _summary_fast(data: Class2Data) -> dict:
    p = data.p
    rank_b = rank(data.B.reshape(-1, data.e), p) if data.e else 0
    return {"order": str(data.order), "center_order": str(p**data.e),
            "derived_order": str(p**rank_b), "class_at_most_2": True, "backend": "Class2 (bilinear)"}


def _summary_generic(G) -> dict:
    D = derived_subgroup(G)
    cls2 = commutator_subgroup(G, whole(G), D).order == 1
    return {"order": str(G.order), "center_order": str(center(G).order), "derived_order": str(D.order),
            "class_at_most_2": cls2, "backend": G.backend}


def compute_lattice(gf: GroupFile, opts: AnalysisOptions) -> tuple[CDLattice, str, dict]:
    """(lattice, path name, group summary).  The bilinear path is used when
    ``opts.fast`` is set or, for class-2 input, when the group is too large
    for a multiplication table."""
    data = gf.class2_data()
    order = gf.order
    want_fast = data is not None and (opts.fast or (order is not None and order > TABLE_CAP))
    if want_fast:
        try:
            model = BilinearModel(data)
        except RadicalNotTrivial:
            model = None
        if model is not None:
            return cd_lattice(model), "fast", _summary_fast(data)
    G = gf.build(opts.max_order)
    return cd_lattice(G), "generic", _summary_generic(G)


def _oracle_check(gf: GroupFile, L: CDLattice, opts: AnalysisOptions) -> dict:
    order = gf.order
    if order is not None and order > ORACLE_CAP:
        return {"passed": True, "skipped": f"order {order} above oracle cap {ORACLE_CAP}"}
    G = gf.build(opts.max_order)
    if G.order > ORACLE_CAP:
        return {"passed": True, "skipped": f"order {G.order} above oracle cap {ORACLE_CAP}"}
    expected = cd_from_subgroups(G, all_subgroups(G))
    if isinstance(L.group, BilinearModel):
        got = sorted(L.group.to_group_bits(m.bits, G) for m in L.members)
    else:
        got = sorted(m.bits for m in L.members)
    return {"passed": got == expected, "members": len(expected)}


def analyze(gf: GroupFile, opts: AnalysisOptions = AnalysisOptions()) -> AnalysisReport:
    t0 = time.perf_counter()
    L, path, summary = compute_lattice(gf, opts)
    t1 = time.perf_counter()
    checks = {}
    checks["lattice_axioms"] = verify_lattice_axioms(L).to_dict()
    ivs = [verify_interval_propositions(iv) for iv in quasi_antichain_intervals(L)]
    checks["intervals"] = {"passed": all(r.passed for r in ivs), "count": len(ivs),
                           "failures": [f"{r.subject}: {c.name}" for r in ivs for c in r.failures]}
    shape = L.shape()
    top = L.members[L.top]
    if (shape.kind == "QuasiAntichain" and shape.w >= 3 and shape.p is not None
            and top.order == int(summary["order"]) and shape.t is not None
            and _is_p_group(int(summary["order"]), shape.p)):
        c = theorem_constraints_check(shape.p, shape.w, shape.t, shape.u, shape.a)
        checks["constraints"] = {"passed": c.passed, "violations": c.violations,
                                 "b": c.b, "c": c.c}
    if opts.oracle:
        checks["oracle"] = _oracle_check(gf, L, opts)
    t2 = time.perf_counter()
    timing = {"cd_seconds": round(t1 - t0, 3), "checks_seconds": round(t2 - t1, 3)} if opts.timing else None
    return AnalysisReport(gf.label, path, summary, L, checks, timing)


def _is_p_group(order: int, p: int) -> bool:
    while order % p == 0:
        order //= p
    return order == 1


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

def export_dot(L: CDLattice, name: str = "CD") -> str:
    flags = L.abelian_flags()
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for k, m in enumerate(L.members):
        tag = "abelian" if flags[k] else "nonabelian"
        lines.append(f'  n{k} [label="{m.order}\\n{tag}"];')
    for a, b in sorted(L.covers):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------

class ResultCache:
    """Reports stored under sha256(engine version, options, group-file bytes)."""

    def __init__(self, directory):
        self.dir = Path(directory)

    @staticmethod
    def key(file_bytes: bytes, opts: AnalysisOptions) -> str:
        h = hashlib.sha256()
        for part in (ENGINE_VERSION.encode(), opts.key().encode(), file_bytes):
            h.update(len(part).to_bytes(8, "little"))
            h.update(part)
        return h.hexdigest()

    def path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def get(self, key: str) -> bytes | None:
        try:
            return self.path(key).read_bytes()
        except FileNotFoundError:
            return None

    def put(self, key: str, payload: bytes) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(payload)
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def analyze_cached(gf: GroupFile, opts: AnalysisOptions, cache: ResultCache | None) -> tuple[str, bool, bool]:
    """(report text, passed, cache hit)."""
    raw = dumps(gf).encode()
    if cache is not None:
        key = cache.key(raw, opts)
        hit = cache.get(key)
        if hit is not None:
            text = hit.decode()
            return text, json.loads(text)["passed"], True
    rep = analyze(gf, opts)
    text = rep.to_json()
    if cache is not None:
        cache.put(key, text.encode())
    return text, rep.passed, False
