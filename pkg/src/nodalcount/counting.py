"""Nodal domain counting on discrete graphs.

Four routes are implemented and cross-validated:
  * component labeling of the sign classes (the reference oracle),
  * the flip method: nu = F + V - B + l with l the cycle rank of the
    flip-deleted graph,
  * the break-up method: multiplicity of the zero eigenvalue of the
    Laplacian of the flip-deleted graph,
  * (in sectors.py / partition.py) sector lookup and the spin-sum count.

Zero entries are classified against an explicit threshold and routed
through the strong/weak graph transforms.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, chromatic_number, cycle_rank
from .kernels import mask_component_count
from .spectral import Spectrum, laplacian, zero_multiplicity

__all__ = [
    "ValueVector", "SignVector", "FlipSet", "NodalReport", "MorphologyCheck",
    "count_strong", "count_weak", "zero_transform", "flip_set",
    "count_via_flips", "count_via_breakup", "check_morphology", "bound_report",
    "reports_to_csv",
]

ZERO_FACTOR = 1e-10


def _threshold(values, zero_threshold):
    if zero_threshold is not None:
        return zero_threshold
    amax = float(np.max(np.abs(values))) if len(values) else 0.0
    return ZERO_FACTOR * amax


@dataclass(frozen=True)
class ValueVector:
    """Real vertex values with an explicit zero policy."""

    values: np.ndarray
    zero_threshold: float

    @classmethod
    def of(cls, values, zero_threshold=None):
        arr = np.asarray(values, dtype=float)
        return cls(arr, _threshold(arr, zero_threshold))

    def signs(self):
        s = np.zeros(len(self.values), dtype=np.int64)
        s[self.values > self.zero_threshold] = 1
        s[self.values < -self.zero_threshold] = -1
        return s


@dataclass(frozen=True)
class SignVector:
    signs: np.ndarray

    @property
    def has_zeros(self):
        return bool(np.any(self.signs == 0))


@dataclass(frozen=True)
class FlipSet:
    """Bonds whose endpoint signs are strictly opposite."""

    flips: tuple
    count: int


def _as_signs(g, values, zero_threshold):
    arr = np.asarray(values, dtype=float)
    if len(arr) != g.vertex_count:
        raise ValueError("value vector length %d != vertex count %d"
                         % (len(arr), g.vertex_count))
    return ValueVector.of(arr, zero_threshold).signs()


def _sign_masks(signs):
    plus = minus = 0
    for i, s in enumerate(signs):
        if s > 0:
            plus |= 1 << i
        elif s < 0:
            minus |= 1 << i
    return plus, minus


def count_strong(g: Graph, values, zero_threshold=None) -> int:
    """Maximal connected subgraphs of strictly one sign (the oracle count).

    Zero vertices are deleted; an all-zero vector counts 0 domains.
    """
    signs = _as_signs(g, values, zero_threshold)
    nbr = g.neighbor_masks()
    plus, minus = _sign_masks(signs)
    return mask_component_count(nbr, plus) + mask_component_count(nbr, minus)


def count_weak(g: Graph, values, zero_threshold=None) -> int:
    """Weak count: sign classes may absorb zero vertices, but every domain
    must contain at least one strictly signed vertex."""
    signs = _as_signs(g, values, zero_threshold)
    nbr = g.neighbor_masks()
    total = 0
    for sigma in (1, -1):
        active = strict = 0
        for i, s in enumerate(signs):
            if s == sigma:
                active |= 1 << i
                strict |= 1 << i
            elif s == 0:
                active |= 1 << i
        # count components of `active` that contain a strict vertex
        rem = active
        while rem:
            comp = rem & -rem
            frontier = comp
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    v = (f & -f).bit_length() - 1
                    f &= f - 1
                    nxt |= nbr[v]
                frontier = nxt & active & ~comp
                comp |= frontier
            if comp & strict:
                total += 1
            rem &= ~comp
    return total


def weak_hazard(g: Graph, values, zero_threshold=None) -> bool:
    """True when some zero vertex has a single-signed (or all-zero)
    neighborhood, in which case the weak zero-transform would add an
    artificial domain. Cannot occur for Laplacian eigenvectors."""
    signs = _as_signs(g, values, zero_threshold)
    adj = g.neighbors()
    for i, s in enumerate(signs):
        if s != 0:
            continue
        nbr_signs = {signs[w] for w in adj[i] if signs[w] != 0}
        if len(nbr_signs) <= 1:
            return True
    return False


def zero_transform(g: Graph, values, mode, zero_threshold=None):
    """Rewrite (graph, values) so the flip machinery applies despite zeros.

    strong: delete zero vertices and incident bonds.
    weak: split each zero vertex into a positive and a negative copy, both
    joined to all former neighbors but not to each other.
    Returns (Graph, values) on the transformed graph; identity when no zeros.
    """
    if mode not in ("strong", "weak"):
        raise ValueError("mode must be 'strong' or 'weak'")
    arr = np.asarray(values, dtype=float)
    signs = _as_signs(g, arr, zero_threshold)
    zeros = [i for i in range(g.vertex_count) if signs[i] == 0]
    if not zeros:
        return g, arr.copy()
    eps = 1.0
    nonzero_mags = np.abs(arr[signs != 0])
    if len(nonzero_mags):
        eps = float(nonzero_mags.min()) / 2.0

    if mode == "strong":
        keep = [i for i in range(g.vertex_count) if signs[i] != 0]
        remap = {old: new for new, old in enumerate(keep, start=1)}
        bonds = [(remap[i - 1], remap[j - 1]) for (i, j) in g.bonds
                 if (i - 1) in remap and (j - 1) in remap]
        if not keep:
            raise ValueError("all-zero vector: strong transform is empty")
        return Graph(len(keep), tuple(bonds)), arr[keep]

    remap = {}
    new_vals = []
    for i in range(g.vertex_count):
        if signs[i] != 0:
            remap[i] = (len(new_vals) + 1,)
            new_vals.append(arr[i])
        else:
            remap[i] = (len(new_vals) + 1, len(new_vals) + 2)
            new_vals += [eps, -eps]
    bonds = set()
    for (i, j) in g.bonds:
        for u in remap[i - 1]:
            for w in remap[j - 1]:
                bonds.add((min(u, w), max(u, w)))
    return Graph(len(new_vals), tuple(sorted(bonds))), np.array(new_vals)


def flip_set(g: Graph, signs) -> FlipSet:
    """Flip bonds of a zero-free sign vector, checked against the quadratic
    form (s, L s)/4 which must reproduce the enumerated count exactly."""
    s = np.asarray(signs, dtype=np.int64)
    if np.any(s == 0):
        raise ValueError("sign vector has zeros; apply zero_transform first")
    flips = tuple(b for b in g.bonds if s[b[0] - 1] * s[b[1] - 1] < 0)
    qf = int(s @ laplacian(g) @ s)
    if qf % 4 != 0 or qf // 4 != len(flips):
        raise RuntimeError("flip quadratic form mismatch: %d vs %d flips"
                           % (qf, len(flips)))
    return FlipSet(flips, len(flips))


def count_via_flips(g: Graph, values, zero_threshold=None):
    """Nodal count from the flip formula: nu = F + V - B + l.

    l is the cycle rank of the flip-deleted graph, i.e. the number of
    independent constant-sign cycles. Summing the per-component identity
    makes the same global formula valid for disconnected graphs. Returns
    (count, l); rejects vectors with zero entries.
    """
    signs = _as_signs(g, values, zero_threshold)
    if np.any(signs == 0):
        raise ValueError("zeros present; apply zero_transform first")
    fs = flip_set(g, signs)
    kept = tuple(b for b in g.bonds if b not in set(fs.flips))
    stripped = Graph(g.vertex_count, kept)
    l = cycle_rank(stripped)
    nu = fs.count + g.vertex_count - g.bond_count + l
    return nu, l


def count_via_breakup(g: Graph, values, tol=1e-9, zero_threshold=None) -> int:
    """Nodal count as the multiplicity of the zero eigenvalue of the
    Laplacian of the flip-deleted graph (adjacency C*(1 + s_i s_j)/2)."""
    signs = _as_signs(g, values, zero_threshold)
    if np.any(signs == 0):
        raise ValueError("zeros present; apply zero_transform first")
    C = g.adjacency()
    outer = np.outer(signs, signs)
    C_kept = C * (1 + outer) // 2
    L = np.diag(C_kept.sum(axis=1)) - C_kept
    return zero_multiplicity(L, tol)


# ---------------------------------------------------------------------------
# morphology of nodal domains on regular graphs

def _strong_domains(g: Graph, signs):
    """List of (vertex_set, sign) for the strong nodal domains."""
    adj = g.neighbors()
    seen = [False] * g.vertex_count
    out = []
    for start in range(g.vertex_count):
        if seen[start] or signs[start] == 0:
            continue
        sigma = signs[start]
        comp = {start}
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w] and signs[w] == sigma:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        out.append((comp, int(sigma)))
    return out


@dataclass(frozen=True)
class MorphologyCheck:
    eigenvalue: float
    valency: int
    domain_count: int
    no_interior_ok: bool      # lambda > v: no domain has an interior vertex
    min_size_ok: bool         # lambda < v: every domain has >= 2 vertices
    degree_ok: bool           # lambda < v - k: some in-domain degree > k
    count_bound_ok: bool      # count <= V/(k+2), k = v - ceil(lambda)
    count_bound_applicable: bool
    at_midpoint: bool         # lambda == v special case

    def ok(self):
        return (self.no_interior_ok and self.min_size_ok and self.degree_ok
                and (self.count_bound_ok or not self.count_bound_applicable))


def check_morphology(g: Graph, values, eigenvalue, zero_threshold=None,
                     cmp_tol=1e-7) -> MorphologyCheck:
    """Shape restrictions on strong nodal domains of eigenvectors of a
    v-regular graph: above the spectral midpoint v no domain has an interior
    vertex; below it, no domain is a single vertex and each domain has a
    vertex of in-domain degree above v - ceil(lambda); the count is then
    bounded by V/(k+2)."""
    degs = g.degrees()
    if len(set(degs.tolist())) != 1:
        raise ValueError("graph is not regular")
    v = int(degs[0])
    signs = _as_signs(g, values, zero_threshold)
    domains = _strong_domains(g, signs)
    adj = g.neighbors()
    lam = float(eigenvalue)
    scale = max(1.0, abs(lam), float(v))
    above = lam > v + cmp_tol * scale
    below = lam < v - cmp_tol * scale
    at_mid = not above and not below
    zero_free = not np.any(signs == 0)

    no_interior_ok = True
    if above or (at_mid and zero_free) or at_mid:
        # strong-count version of clause (i); also holds at lambda = v
        for comp, _ in domains:
            for u in comp:
                if all(w in comp for w in adj[u]):
                    no_interior_ok = False

    min_size_ok = True
    if below or (at_mid and zero_free):
        min_size_ok = all(len(comp) >= 2 for comp, _ in domains)

    degree_ok = True
    count_bound_applicable = False
    count_bound_ok = True
    if below:
        # largest k with lambda < v - k
        k_star = math.ceil(v - lam) - 1
        if k_star >= 0:
            for comp, _ in domains:
                best = max(sum(1 for w in adj[u] if w in comp) for u in comp)
                if best <= k_star:
                    degree_ok = False
        k = v - math.ceil(lam)
        if lam < v - k - cmp_tol * scale:  # strict; fails only for integer lambda
            count_bound_applicable = True
            count_bound_ok = len(domains) <= g.vertex_count / (k + 2)

    return MorphologyCheck(lam, v, len(domains), no_interior_ok, min_size_ok,
                           degree_ok, count_bound_ok, count_bound_applicable,
                           at_mid)


# ---------------------------------------------------------------------------
# per-eigenvector bound report

@dataclass(frozen=True)
class NodalReport:
    n: int                    # 1-based spectral index
    eigenvalue: float
    multiplicity: int
    strong: int
    weak: int
    nu_flips: int
    nu_breakup: int
    flip_count: int
    constant_sign_cycles: int
    courant_ok: bool
    berkolaiko_ok: object     # bool, or None when hypotheses fail
    chromatic_ok: bool
    chromatic_exact: bool
    flip_window_ok: object
    nu_sector: object = None
    flags: tuple = field(default=())


def bound_report(g: Graph, spectrum: Spectrum, zero_threshold=None,
                 sector_table=None, chromatic_exact_limit=12):
    """Evaluate every eigenvector of the spectrum against the nodal bounds.

    Violations are reported, never silently ignored; checks whose
    hypotheses fail (multiplicity, zero entries) are recorded as None.
    """
    r = cycle_rank(g)
    chi, chi_exact = chromatic_number(g, exact_limit=chromatic_exact_limit)
    reports = []
    for idx in range(spectrum.size):
        f = spectrum.vector(idx)
        vv = ValueVector.of(f, zero_threshold)
        signs = vv.signs()
        has_zeros = bool(np.any(signs == 0))
        all_zero = bool(np.all(signs == 0))
        strong = count_strong(g, f, zero_threshold)
        weak = count_weak(g, f, zero_threshold)
        flags = []
        if all_zero:
            flags.append("all_zero")
        elif has_zeros:
            flags.append("has_zeros")
            if weak_hazard(g, f, zero_threshold):
                flags.append("weak_hazard")

        if all_zero:
            nu_fl = nu_br = 0
            fcount = l = 0
        elif has_zeros:
            gs, vs = zero_transform(g, f, "strong", zero_threshold)
            nu_fl, l = count_via_flips(gs, vs)
            nu_br = count_via_breakup(gs, vs)
            fcount = flip_set(gs, ValueVector.of(vs).signs()).count
        else:
            nu_fl, l = count_via_flips(g, f, zero_threshold)
            nu_br = count_via_breakup(g, f, zero_threshold)
            fcount = flip_set(g, signs).count

        s, e = spectrum.group_of(idx)
        m = e - s + 1
        n1 = idx + 1
        courant_ok = strong <= (s + 1) + m - 1
        simple_zero_free = (m == 1) and not has_zeros
        berkolaiko_ok = (strong >= n1 - r) if simple_zero_free else None
        chromatic_ok = strong <= g.vertex_count - chi + 2
        if simple_zero_free:
            flip_window_ok = (fcount + 1 - r <= strong <= fcount + 1
                              and n1 - r - 1 <= fcount <= n1 + r - 1)
        else:
            flip_window_ok = None

        nu_sec = None
        if sector_table is not None and not has_zeros:
            from .sectors import count_via_sector
            nu_sec = count_via_sector(sector_table, g, f, zero_threshold)

        reports.append(NodalReport(
            n=n1, eigenvalue=float(spectrum.eigenvalues[idx]), multiplicity=m,
            strong=strong, weak=weak, nu_flips=nu_fl, nu_breakup=nu_br,
            flip_count=fcount, constant_sign_cycles=l, courant_ok=courant_ok,
            berkolaiko_ok=berkolaiko_ok, chromatic_ok=chromatic_ok,
            chromatic_exact=chi_exact, flip_window_ok=flip_window_ok,
            nu_sector=nu_sec, flags=tuple(flags)))
    return reports


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "eigenvalue", "m", "nu_strong", "nu_weak", "nu_flips",
                "nu_breakup", "F", "l", "courant_ok", "berkolaiko_ok",
                "chromatic_ok"])
    for rep in reports:
        w.writerow([rep.n, repr(rep.eigenvalue), rep.multiplicity, rep.strong,
                    rep.weak, rep.nu_flips, rep.nu_breakup, rep.flip_count,
                    rep.constant_sign_cycles, rep.courant_ok,
                    rep.berkolaiko_ok, rep.chromatic_ok])
    return buf.getvalue()
