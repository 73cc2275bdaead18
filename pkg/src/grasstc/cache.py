"""On-disk cache of normal-form tables.

File layout (one file per ring, plain text)::

    GRASSTC-NF v1 k=<k> n=<n>
    degree <d> <basis size> <monomial count>
    basis <m1> <m2> ...
    <monomial> = <normal form>
    ...

Monomials and normal forms use the canonical polynomial text.  Files are
written to a temporary name in the same directory and renamed into place,
so concurrent writers of the same ring race harmlessly.
"""

from __future__ import annotations

import logging
import os
import tempfile
from math import comb
from pathlib import Path

from .errors import UsageError
from .ring import DEFAULT_CAP, DegreeTable, GrassmannRing, build_ring, monomials_of_degree

log = logging.getLogger(__name__)

ENV_VAR = "GRASSTC_CACHE_DIR"
VERSION = "v1"
MAGIC = "GRASSTC-NF"


class CacheFormatError(ValueError):
    pass


def cache_dir(directory: str | os.PathLike | None = None) -> Path | None:
    """The explicit directory, else the one named by the environment, else None."""
    if directory is not None:
        return Path(directory)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def cache_path(k: int, n: int, directory: str | os.PathLike | None = None) -> Path:
    d = cache_dir(directory)
    if d is None:
        raise UsageError(f"no cache directory given and {ENV_VAR} is unset")
    return d / f"G{k}_{n}.{VERSION}.nf"


def header(k: int, n: int) -> str:
    return f"{MAGIC} {VERSION} k={k} n={n}"


def dumps(ring: GrassmannRing) -> str:
    ring.build_all()
    sp = ring.space
    lines = [header(ring.k, ring.n)]
    for d in range(ring.dim + 1):
        t = ring.table(d)
        lines.append(f"degree {d} {len(t.basis)} {len(t.monomials)}")
        lines.append("basis " + " ".join(sp.format_monomial(b) for b in t.basis))
        for m, bits in zip(t.monomials, t.nf):
            lines.append(f"{sp.format_monomial(m)} = {ring.to_polynomial({d: bits})}")
    return "\n".join(lines) + "\n"


def loads(text: str, k: int, n: int, cap: int = DEFAULT_CAP) -> GrassmannRing:
    """Rebuild a ring from ``dumps`` output; raises CacheFormatError on any mismatch."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != header(k, n):
        raise CacheFormatError(f"header mismatch: {lines[0] if lines else ''!r}")
    ring = build_ring(k, n, cap)
    sp = ring.space
    pos = 1
    total = 0
    try:
        for d in range(ring.dim + 1):
            tag, deg, nb, nm = lines[pos].split()
            if tag != "degree" or int(deg) != d:
                raise CacheFormatError(f"expected degree {d}, got {lines[pos]!r}")
            nb, nm = int(nb), int(nm)
            basis_line = lines[pos + 1].split()
            if basis_line[0] != "basis" or len(basis_line) - 1 != nb:
                raise CacheFormatError(f"bad basis line in degree {d}")
            basis = [sp.parse_monomial(b) for b in basis_line[1:]]
            bpos = {b: i for i, b in enumerate(basis)}
            monos = monomials_of_degree(k, d)
            if nm != len(monos):
                raise CacheFormatError(f"degree {d}: {nm} monomials, expected {len(monos)}")
            index = {m: i for i, m in enumerate(monos)}
            nf = [0] * nm
            for line in lines[pos + 2: pos + 2 + nm]:
                lhs, rhs = line.split("=")
                m = sp.parse_monomial(lhs)
                bits = 0
                for t in sp.parse(rhs).terms:
                    bits ^= 1 << bpos[t]
                nf[index[m]] = bits
            for b in basis:
                if nf[index[b]] != 1 << bpos[b]:
                    raise CacheFormatError(f"degree {d}: basis monomial {b} is not fixed")
            ring._tables[d] = DegreeTable(d, monos, index, basis, nf, [])
            total += nb
            pos += 2 + nm
    except (IndexError, KeyError, ValueError) as exc:
        if isinstance(exc, CacheFormatError):
            raise
        raise CacheFormatError(f"malformed cache body: {exc}") from exc
    if total != comb(n, k):
        raise CacheFormatError(f"total rank {total} != C({n},{k})")
    return ring


def cache_store(ring: GrassmannRing, directory: str | os.PathLike | None = None) -> Path:
    path = cache_path(ring.k, ring.n, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = dumps(ring)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return path


def cache_load(
    k: int, n: int, directory: str | os.PathLike | None = None, cap: int = DEFAULT_CAP
) -> GrassmannRing | None:
    """The cached ring, or None if absent, stale or corrupt (a warning is logged)."""
    path = cache_path(k, n, directory)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    except OSError as exc:
        log.warning("cannot read cache %s: %s", path, exc)
        return None
    try:
        return loads(text, k, n, cap)
    except CacheFormatError as exc:
        log.warning("ignoring cache %s: %s", path, exc)
        return None


def load_or_build(
    k: int, n: int, directory: str | os.PathLike | None = None, cap: int = DEFAULT_CAP
) -> GrassmannRing:
    """Use the cache when a directory is configured, otherwise just build."""
    if cache_dir(directory) is None:
        return build_ring(k, n, cap)
    ring = cache_load(k, n, directory, cap)
    if ring is None:
        ring = build_ring(k, n, cap)
        ring.build_all()
        try:
            cache_store(ring, directory)
        except OSError as exc:
            log.warning("cannot write cache: %s", exc)
    return ring
