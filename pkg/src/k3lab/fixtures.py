"""Surface fixtures stored as small line-based text files.

Each ``<name>.fix`` file holds one surface::

    name X4
    ambient P3
    gram 4 5 2
    class H 1 0
    primes 11
    vars x y z w
    degrees 4
    eq surface: <polynomial>
    curve C: <polynomial>          (one line per equation)
    map iota: <polynomial>         (one line per component)
    checksum iota <sha256 prefix>
    poly branch: <polynomial>

A ``vars`` line sets the ring for the polynomial lines after it.  Blank
lines and ``#`` comments are ignored.  Every error names ``path:line``.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .lattice import GramLattice2, LatticeError, LatVec
from .poly import MultiPoly, PolyError, PolyRing

__all__ = ["FixtureError", "SurfaceFixture", "fixture_dir", "list_fixtures", "load_fixture",
           "parse_fixture", "map_checksum"]

ENV_VAR = "K3LAB_FIXTURES"
SUFFIX = ".fix"


class FixtureError(ValueError):
    pass


@dataclass
class SurfaceFixture:
    name: str
    ambient: str
    path: str
    gram: GramLattice2 | None = None
    classes: dict[str, LatVec] = field(default_factory=dict)
    primes: tuple[int, ...] = ()
    reductions: list[tuple[int, int, int]] = field(default_factory=list)
    degrees: tuple[int, ...] = ()
    equations: list[MultiPoly] = field(default_factory=list)
    curves: dict[str, list[MultiPoly]] = field(default_factory=dict)
    maps: dict[str, list[MultiPoly]] = field(default_factory=dict)
    polys: dict[str, MultiPoly] = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.equations[0].ring


def map_checksum(components) -> str:
    text = "\n".join(str(c) for c in components)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("k3lab") / "fixtures"))


def list_fixtures(directory: Path | str | None = None) -> list[str]:
    d = Path(directory) if directory is not None else fixture_dir()
    if not d.is_dir():
        raise FixtureError(f"fixture directory {d} does not exist")
    return sorted(p.stem for p in d.glob("*" + SUFFIX))


def load_fixture(name: str, directory: Path | str | None = None) -> SurfaceFixture:
    d = Path(directory) if directory is not None else fixture_dir()
    path = d / (name + SUFFIX)
    if not path.is_file():
        known = ", ".join(list_fixtures(d)) if d.is_dir() else "none"
        raise FixtureError(f"unknown fixture {name!r} (available: {known})")
    return parse_fixture(path.read_text(), str(path))


def parse_fixture(text: str, path: str = "<string>") -> SurfaceFixture:
    fx = SurfaceFixture(name="", ambient="", path=path)
    ring = None
    checksums = {}
    eq_where = []
    degrees_where = path
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{path}:{lineno}"
        head, _, rest = line.partition(" ")
        try:
            if ":" in line and head in ("eq", "curve", "map", "poly"):
                label, _, body = line.partition(":")
                parts = label.split()
                if len(parts) != 2:
                    raise FixtureError(f"expected '{head} <name>: <polynomial>'")
                if ring is None:
                    raise FixtureError("polynomial before any 'vars' line")
                poly = ring.parse(body)
                key = parts[1]
                if head == "eq":
                    fx.equations.append(poly)
                    eq_where.append(where)
                elif head == "curve":
                    fx.curves.setdefault(key, []).append(poly)
                elif head == "map":
                    fx.maps.setdefault(key, []).append(poly)
                else:
                    if key in fx.polys:
                        raise FixtureError(f"duplicate poly {key!r}")
                    fx.polys[key] = poly
            elif head == "name":
                fx.name = rest.strip()
            elif head == "ambient":
                fx.ambient = rest.strip()
            elif head == "gram":
                fx.gram = GramLattice2.parse(rest)
            elif head == "class":
                cname, u, v = rest.split()
                fx.classes[cname] = LatVec(int(u), int(v))
            elif head == "primes":
                fx.primes = tuple(int(p) for p in rest.split())
            elif head == "reduction":
                p, r, d = (int(t) for t in rest.split())
                fx.reductions.append((p, r, d))
            elif head == "vars":
                ring = PolyRing.parse_decl(line)
            elif head == "degrees":
                fx.degrees = tuple(int(t) for t in rest.split())
                degrees_where = where
            elif head == "checksum":
                key, digest = rest.split()
                checksums[key] = (digest, where)
            else:
                raise FixtureError(f"unknown directive {head!r}")
        except FixtureError as exc:
            raise FixtureError(f"{where}: {exc}") from None
        except (PolyError, LatticeError, ValueError) as exc:
            raise FixtureError(f"{where}: {exc}") from None
    _validate(fx, checksums, path, eq_where, degrees_where)
    return fx


def _validate(fx: SurfaceFixture, checksums, path, eq_where, degrees_where):
    if not fx.name:
        raise FixtureError(f"{path}: missing 'name'")
    if not fx.equations:
        raise FixtureError(f"{path}: no 'eq' lines")
    if fx.degrees and len(fx.degrees) != len(fx.equations):
        raise FixtureError(f"{degrees_where}: {len(fx.degrees)} degrees for {len(fx.equations)} equations")
    for i, F in enumerate(fx.equations):
        deg = fx.degrees[i] if fx.degrees else None
        if not F.is_homogeneous(deg):
            raise FixtureError(f"{eq_where[i]}: equation {i + 1} is not homogeneous of degree {deg}")
    for key, (digest, where) in checksums.items():
        if key not in fx.maps:
            raise FixtureError(f"{where}: checksum for unknown map {key!r}")
        actual = map_checksum(fx.maps[key])
        if actual != digest:
            raise FixtureError(f"{where}: checksum mismatch for map {key!r} ({actual} != {digest})")
