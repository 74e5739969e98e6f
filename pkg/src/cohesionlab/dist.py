"""Discrete joint distributions over a common finite alphabet.

Outcomes are length-n tuples of symbols in 0..q-1, stored sparsely as an
atom -> mass map. Variable subsets are plain n-bit integer masks (bit i
selects variable i). Entropies default to base q, the convention used
throughout the toolkit; pass an explicit base to convert.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .errors import DistributionError

MASS_TOL = 1e-12
DENSE_BITS_LIMIT = 24


def mask_bits(mask: int) -> list[int]:
    """Variable indices selected by an integer subset mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_to_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class JointDistribution:
    """Probability table over n discrete variables with common alphabet size q.

    Atoms with zero mass are dropped on construction. Instances are
    treated as immutable values; nothing mutates `atoms` after init.
    """

    n: int
    q: int
    atoms: dict

    def __post_init__(self):
        if self.n < 1:
            raise DistributionError("need at least one variable")
        if self.q < 2:
            raise DistributionError("alphabet size must be >= 2")
        total = 0.0
        clean = {}
        for outcome, mass in self.atoms.items():
            outcome = tuple(int(s) for s in outcome)
            if len(outcome) != self.n:
                raise DistributionError(
                    f"outcome {outcome} has length {len(outcome)}, expected {self.n}"
                )
            for s in outcome:
                if s < 0 or s >= self.q:
                    raise DistributionError(
                        f"symbol {s} in outcome {outcome} outside 0..{self.q - 1}"
                    )
            mass = float(mass)
            if mass < 0.0:
                raise DistributionError(f"negative mass {mass} at {outcome}")
            total += mass
            if mass > 0.0:
                clean[outcome] = clean.get(outcome, 0.0) + mass
        if abs(total - 1.0) > MASS_TOL:
            raise DistributionError(f"masses sum to {total!r}, not 1 within {MASS_TOL}")
        object.__setattr__(self, "atoms", clean)

    @classmethod
    def uniform(cls, n: int, q: int) -> "JointDistribution":
        mass = 1.0 / q**n
        return cls(n, q, {x: mass for x in product(range(q), repeat=n)})

    @classmethod
    def point_mass(cls, outcome, q: int) -> "JointDistribution":
        outcome = tuple(outcome)
        return cls(len(outcome), q, {outcome: 1.0})

    @classmethod
    def normalized(cls, n: int, q: int, atoms: dict) -> "JointDistribution":
        """Explicitly renormalize raw nonnegative weights to total mass 1."""
        total = sum(atoms.values())
        if total <= 0:
            raise DistributionError("cannot normalize: total weight is not positive")
        return cls(n, q, {x: m / total for x, m in atoms.items() if m > 0})

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    def mass(self, outcome) -> float:
        return self.atoms.get(tuple(outcome), 0.0)


def marginalize(p: JointDistribution, mask: int) -> JointDistribution:
    """Marginal distribution over the variables selected by `mask`.

    The returned distribution keeps the selected variables in increasing
    index order.
    """
    if mask == 0:
        raise DistributionError("empty subset")
    if mask >> p.n:
        raise DistributionError(f"mask {mask:#b} does not fit in {p.n} bits")
    idx = mask_bits(mask)
    out: dict = {}
    for outcome, m in p.atoms.items():
        key = tuple(outcome[i] for i in idx)
        out[key] = out.get(key, 0.0) + m
    return JointDistribution(len(idx), p.q, out)


def entropy(p: JointDistribution, base: float | None = None) -> float:
    """Shannon entropy; zero-mass atoms contribute nothing (0 log 0 = 0)."""
    b = p.q if base is None else base
    if b <= 1:
        raise DistributionError("log base must be > 1")
    h = 0.0
    for m in p.atoms.values():
        h -= m * math.log(m)
    return h / math.log(b)


def subset_entropy(p: JointDistribution, mask: int, base: float | None = None) -> float:
    """Entropy of the marginal on `mask`; H of the empty subset is 0."""
    if mask == 0:
        return 0.0
    return entropy(marginalize(p, mask), base)


def entropy_table(p: JointDistribution, base: float | None = None) -> list[float]:
    """All 2^n subset entropies, indexed by subset mask (index 0 -> 0.0)."""
    if p.n > 20:
        raise DistributionError("entropy table limited to n <= 20")
    b = p.q if base is None else base
    logb = math.log(b)
    table = [0.0] * (1 << p.n)
    items = list(p.atoms.items())
    for mask in range(1, 1 << p.n):
        idx = mask_bits(mask)
        marg: dict = {}
        for outcome, m in items:
            key = tuple(outcome[i] for i in idx)
            marg[key] = marg.get(key, 0.0) + m
        h = 0.0
        for m in marg.values():
            if m > 0.0:
                h -= m * math.log(m)
        table[mask] = h / logb
    return table


def kl_divergence(
    p: JointDistribution, r: JointDistribution, base: float | None = None
) -> float:
    """D(p || r). Returns +inf when p has mass outside r's support."""
    if (p.n, p.q) != (r.n, r.q):
        raise DistributionError(
            f"shape mismatch: ({p.n},{p.q}) vs ({r.n},{r.q})"
        )
    b = p.q if base is None else base
    total = 0.0
    for outcome, pm in p.atoms.items():
        rm = r.atoms.get(outcome, 0.0)
        if rm <= 0.0:
            return math.inf
        total += pm * math.log(pm / rm)
    return max(total, 0.0) / math.log(b)


def product_of_marginals(p: JointDistribution) -> JointDistribution:
    """Independent product distribution with p's single-variable marginals."""
    margs = [marginalize(p, 1 << i) for i in range(p.n)]
    atoms: dict = {}
    for outcome in product(range(p.q), repeat=p.n):
        m = 1.0
        for i, s in enumerate(outcome):
            m *= margs[i].atoms.get((s,), 0.0)
            if m == 0.0:
                break
        if m > 0.0:
            atoms[outcome] = m
    return JointDistribution(p.n, p.q, atoms)


# ---------------------------------------------------------------------------
# Dense view (small index spaces only)
# ---------------------------------------------------------------------------

def outcome_index(outcome, q: int) -> int:
    """Row-major index of an outcome; first variable is most significant."""
    ix = 0
    for s in outcome:
        ix = ix * q + s
    return ix


def index_outcome(ix: int, n: int, q: int) -> tuple:
    out = []
    for _ in range(n):
        ix, s = divmod(ix, q)
        out.append(s)
    return tuple(reversed(out))


def to_dense(p: JointDistribution) -> list[float]:
    """Flat probability vector of length q^n, row-major outcome order."""
    bits = p.n * math.log2(p.q)
    if bits > DENSE_BITS_LIMIT:
        raise DistributionError(
            f"dense view needs n*log2(q) <= {DENSE_BITS_LIMIT} bits, got {bits:.1f}"
        )
    vec = [0.0] * (p.q**p.n)
    for outcome, m in p.atoms.items():
        vec[outcome_index(outcome, p.q)] = m
    return vec


def from_dense(vec, n: int, q: int) -> JointDistribution:
    if len(vec) != q**n:
        raise DistributionError(f"dense vector length {len(vec)} != {q}^{n}")
    atoms = {
        index_outcome(ix, n, q): float(m) for ix, m in enumerate(vec) if m > 0.0
    }
    return JointDistribution(n, q, atoms)


# ---------------------------------------------------------------------------
# File formats: CSV with header x0,...,x{n-1},p and a JSON mirror
# ---------------------------------------------------------------------------

def to_csv(p: JointDistribution, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# q={p.q}\n")
        writer = csv.writer(fh)
        writer.writerow([f"x{i}" for i in range(p.n)] + ["p"])
        for outcome in sorted(p.atoms):
            writer.writerow(list(outcome) + [repr(p.atoms[outcome])])


def from_csv(path, q: int | None = None) -> JointDistribution:
    path = Path(path)
    header = None
    rows = []
    meta_q = None
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("q="):
                    meta_q = int(body[2:])
                continue
            cells = [c.strip() for c in line.split(",")]
            if header is None:
                header = cells
                if len(header) < 2 or header[-1] != "p":
                    raise DistributionError(
                        f"{path}:{lineno}: header must be x0,...,x{{n-1}},p"
                    )
                continue
            if len(cells) != len(header):
                raise DistributionError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}"
                )
            try:
                outcome = tuple(int(c) for c in cells[:-1])
                mass = float(cells[-1])
            except ValueError as exc:
                raise DistributionError(f"{path}:{lineno}: {exc}") from exc
            rows.append((outcome, mass))
    if header is None or not rows:
        raise DistributionError(f"{path}: no distribution rows found")
    n = len(header) - 1
    if q is None:
        q = meta_q if meta_q is not None else max(max(o) for o, _ in rows) + 1
        q = max(q, 2)
    atoms: dict = {}
    for outcome, mass in rows:
        atoms[outcome] = atoms.get(outcome, 0.0) + mass
    return JointDistribution(n, q, atoms)


def to_json_dict(p: JointDistribution) -> dict:
    return {
        "n": p.n,
        "q": p.q,
        "atoms": [{"x": list(o), "p": m} for o, m in sorted(p.atoms.items())],
    }


def to_json(p: JointDistribution, path) -> None:
    Path(path).write_text(json.dumps(to_json_dict(p), indent=2) + "\n")


def from_json(path) -> JointDistribution:
    data = json.loads(Path(path).read_text())
    try:
        atoms = {tuple(a["x"]): float(a["p"]) for a in data["atoms"]}
        return JointDistribution(int(data["n"]), int(data["q"]), atoms)
    except (KeyError, TypeError) as exc:
        raise DistributionError(f"{path}: malformed JSON distribution: {exc}") from exc


def load(path) -> JointDistribution:
    """Load a distribution from .csv or .json, dispatching on suffix."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return from_json(path)
    return from_csv(path)
