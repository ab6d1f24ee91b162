"""
Command-line pipeline: YAML job config in, YAML report (or SVG) out.

    genuine-hecke report    --config job.yaml [--out report.yaml]
    genuine-hecke check     --config job.yaml
    genuine-hecke apartment --config job.yaml [--character 0] [--out fig.svg]

Exit status: 0 when every verdict passes, 1 on a failing verdict, 2 on an
invalid config.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .apartment import apartment_svg
from .chi_geometry import ChiGeometry, GeometryError, simple_walls_by_facets
from .cover_torus import (DepthError, GenuineCharacter, bad_prime_check, chi_affine,
                          j_chi_descriptor, weyl_act_char)
from .hecke import HeckeAlgebra, relation_report
from .quad_cover import InvalidCoverError, QuadraticCoverData
from .root_datum import (AffineRoot, InvalidDatumError, RootDatum, affine_action, alcove_point,
                         build_preset, elements_up_to_length, translation)
from .shimura import ShimuraComparison
from .tame_arith import InvalidFieldError, TameField

TASKS = ("chi-report", "hecke-check", "shimura-check", "apartment-svg")


class ConfigError(ValueError):
    pass


@dataclass
class CharacterSpec:
    m: tuple[int, ...]
    depth: dict[int, int] | None = None


@dataclass
class JobConfig:
    group: dict
    D_matrix: list[list[int]]
    n: int
    p: int
    f: int = 1
    eps_power: int = 1
    characters: list[CharacterSpec] = field(default_factory=list)
    tasks: list[str] = field(default_factory=lambda: list(TASKS[:3]))
    seed: int = 0
    bound_length: int = 4
    bound_offset: int = 3
    samples: int = 50


def _require(raw: dict, key: str):
    if key not in raw:
        raise ConfigError(f"missing field '{key}'")
    return raw[key]


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{name}' must be an integer (got {value!r})")
    return value


def _int_matrix(value, name: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ConfigError(f"field '{name}' must be a list of integer rows")
    return [[_int(x, name) for x in row] for row in value]


def parse_config(raw: Any) -> JobConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    group = _require(raw, "group")
    if not isinstance(group, dict):
        raise ConfigError("field 'group' must be a mapping")
    chars = []
    for idx, c in enumerate(_require(raw, "characters")):
        if not isinstance(c, dict) or "m" not in c:
            raise ConfigError(f"field 'characters[{idx}].m' is missing")
        m = tuple(_int(x, f"characters[{idx}].m") for x in c["m"])
        depth = c.get("depth")
        if depth is not None:
            if not isinstance(depth, dict):
                raise ConfigError(f"field 'characters[{idx}].depth' must be a mapping")
            depth = {_int(k, "depth"): _int(v, "depth") for k, v in depth.items()}
        chars.append(CharacterSpec(m, depth))
    tasks = raw.get("tasks", list(TASKS[:3]))
    for t in tasks:
        if t not in TASKS:
            raise ConfigError(f"field 'tasks' has unknown task {t!r}")
    bounds = raw.get("bounds", {}) or {}
    return JobConfig(
        group=group,
        D_matrix=_int_matrix(_require(raw, "D_matrix"), "D_matrix"),
        n=_int(_require(raw, "n"), "n"),
        p=_int(_require(raw, "p"), "p"),
        f=_int(raw.get("f", 1), "f"),
        eps_power=_int(raw.get("eps_power", 1), "eps_power"),
        characters=chars,
        tasks=list(tasks),
        seed=_int(raw.get("seed", 0), "seed"),
        bound_length=_int(bounds.get("length", 4), "bounds.length"),
        bound_offset=_int(bounds.get("offset", 3), "bounds.offset"),
        samples=_int(bounds.get("samples", 50), "bounds.samples"),
    )


def load_config(path: str | Path) -> JobConfig:
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    return parse_config(raw)


def build_datum(group: dict) -> RootDatum:
    if "preset" in group:
        return build_preset(group["preset"], group.get("size"))
    for k in ("rank", "roots", "coroots", "simple_indices", "pairing"):
        if k not in group:
            raise ConfigError(f"missing field 'group.{k}'")
    return RootDatum(group["rank"], group["roots"], group["coroots"], group["simple_indices"],
                     group["pairing"], name=group.get("name", ""))


@dataclass
class Job:
    config: JobConfig
    datum: RootDatum
    field: TameField
    cover: QuadraticCoverData
    characters: list[GenuineCharacter]
    warnings: list[str]


def prepare(config: JobConfig) -> Job:
    """Validate everything before any task runs; raises ConfigError on bad input."""
    try:
        datum = build_datum(config.group)
        fld = TameField(config.p, config.f, config.n, config.eps_power)
        cover = QuadraticCoverData(datum, config.D_matrix, config.n)
        chars = [GenuineCharacter(fld, cover, c.m, c.depth) for c in config.characters]
    except (InvalidDatumError, InvalidFieldError, InvalidCoverError, DepthError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return Job(config, datum, fld, cover, chars, bad_prime_check(datum, config.p))


# ---------------------------------------------------------------------------
# tasks

def _s(x) -> Any:
    """YAML-safe plain data."""
    if isinstance(x, dict):
        return {str(k): _s(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_s(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def equivariance_failures(chi: GenuineCharacter, rng: random.Random, samples: int,
                          max_len: int, offset: int) -> list:
    """chi_a == (w . chi)_{w a} for sampled w and all a with |offset| <= bound."""
    d = chi.datum
    pool = _sample_pool(d, max_len)
    bad = []
    for _ in range(samples):
        w = rng.choice(pool)
        wchi = weyl_act_char(w, chi)
        for i in range(d.num_roots):
            for k in range(-offset, offset + 1):
                a = AffineRoot(i, k)
                if chi_affine(chi, a) != chi_affine(wchi, affine_action(d, w, a)):
                    return [(w, a)]
    return bad


_POOLS: dict = {}


def _sample_pool(datum: RootDatum, max_len: int) -> list:
    """Elements of length <= max_len in W_af, times translations by basis vectors (for W_ex)."""
    key = (datum, max_len)
    if key not in _POOLS:
        base = list(elements_up_to_length(datum, max_len))
        extra = []
        r = datum.rank
        for j in range(r):
            e = tuple(int(t == j) for t in range(r))
            extra += [w * translation(datum, e) for w in base[:50]]
        _POOLS[key] = sorted(set(base + extra), key=lambda w: w.key())
    return _POOLS[key]


def chi_report(geom: ChiGeometry, config: JobConfig, rng: random.Random) -> dict:
    out = geom.summary()
    shifted = geom.system.translated(geom.shift_v)
    eq = equivariance_failures(geom.chi, rng, config.samples, config.bound_length, config.bound_offset)
    # A_0 lies inside A_{chi,0}, so its interior point tests the mover
    mover_pt = geom.conjugator.act(alcove_point(geom.datum))
    checks = {
        "shift_vector": shifted == geom.diamond_system,
        "wall_crosscheck": simple_walls_by_facets(geom.system) == geom.delta,
        "mover": all(a.value(geom.datum, mover_pt) > 0 for a in geom.diamond_delta),
        "equivariance": not eq,
    }
    out["checks"] = checks
    out["passed"] = all(checks.values())
    if eq:
        out["equivariance_witness"] = [repr(eq[0][0]), repr(eq[0][1])]
    return out


def run(config: JobConfig, timing: bool = False, out_dir: Path | None = None) -> dict:
    job = prepare(config)
    for msg in job.warnings:
        warnings.warn(msg, stacklevel=2)
    report: dict[str, Any] = {
        "group": job.datum.name or "custom",
        "n": config.n, "q": job.field.q, "seed": config.seed,
        "Y_Qn_basis": [list(r) for r in job.cover.YQn_basis],
        "warnings": job.warnings,
        "characters": [],
    }
    passed = True
    for idx, chi in enumerate(job.characters):
        rng = random.Random(f"{config.seed}:{idx}")
        entry: dict[str, Any] = {"m": list(chi.m)}
        t0 = time.perf_counter()
        if not chi.is_depth_zero:
            desc = j_chi_descriptor(chi)
            entry["depth_descriptor"] = {"f_values": desc.f_values, "torus": desc.torus_marker}
            entry["skipped"] = "positive depth: only the depth descriptor is computed"
            report["characters"].append(_s(entry))
            continue
        geom = ChiGeometry(chi)
        if "chi-report" in config.tasks:
            entry["chi_report"] = chi_report(geom, config, rng)
            passed &= entry["chi_report"]["passed"]
        if "hecke-check" in config.tasks:
            entry["hecke_check"] = relation_report(HeckeAlgebra(geom), seed=rng.randrange(2 ** 32),
                                                   trials=config.samples, max_len=config.bound_length + 1)
            passed &= entry["hecke_check"]["passed"]
        if "shimura-check" in config.tasks:
            comp = ShimuraComparison(chi, geom)
            ups = comp.upsilon_check(seed=rng.randrange(2 ** 32), trials=config.samples,
                                     max_len=config.bound_length)
            entry["shimura_check"] = {
                "m_Qn": list(comp.transfer.m_restricted),
                "endoscopic_roots": [list(r) for r in comp.transfer.endo.datum_Qn.roots],
                "endoscopic_coroots": [list(c) for c in comp.transfer.endo.datum_Qn.coroots],
                "conjugator": {"linear": [list(r) for r in geom.conjugator.linear.matrix],
                               "translation": list(geom.conjugator.translation)},
                "wall_bijection": comp.wall_bijection,
                "upsilon": ups,
                "fullness": comp.fullness_and_torsion(),
            }
            passed &= ups["verdict"]
        if "apartment-svg" in config.tasks:
            if job.datum.rank > 2:
                entry["apartment"] = {"skipped": f"rank {job.datum.rank} > 2"}
            else:
                ap = apartment_svg(geom, bound=config.bound_offset)
                entry["apartment"] = {"walls": ap.walls_drawn, "chi_walls": ap.chi_walls,
                                      "diamond_walls": ap.diamond_walls,
                                      "chamber_walls": len(ap.chamber_walls),
                                      "diamond_chamber_walls": len(ap.diamond_chamber_walls)}
                if out_dir is not None:
                    path = out_dir / f"apartment_{idx}.svg"
                    path.write_text(ap.svg)
                    entry["apartment"]["file"] = path.name
        if timing:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        report["characters"].append(_s(entry))
    report["passed"] = bool(passed)
    return report


def dump(report: dict) -> str:
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=None, width=100)


# ---------------------------------------------------------------------------
# entry point

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="genuine-hecke", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="verb", required=True)
    for verb in ("report", "check", "apartment"):
        p = sub.add_parser(verb)
        p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int)
        p.add_argument("--bound-length", type=int)
        p.add_argument("--bound-offset", type=int)
        p.add_argument("--out")
        if verb == "report":
            p.add_argument("--timing", action="store_true", help="add wall-clock seconds (breaks byte identity)")
        if verb == "apartment":
            p.add_argument("--character", type=int, default=0)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config.seed = args.seed
        if args.bound_length is not None:
            config.bound_length = args.bound_length
        if args.bound_offset is not None:
            config.bound_offset = args.bound_offset
        if args.verb == "apartment":
            job = prepare(config)
            if not 0 <= args.character < len(job.characters):
                raise ConfigError(f"field 'characters' has no entry {args.character}")
            if job.datum.rank > 2:
                raise ConfigError(f"field 'group' has rank {job.datum.rank}; pictures need rank <= 2")
            svg = apartment_svg(ChiGeometry(job.characters[args.character]), bound=config.bound_offset).svg
            _emit(svg, args.out)
            return 0
        out_dir = Path(args.out).parent if args.out else None
        report = run(config, timing=getattr(args, "timing", False), out_dir=out_dir)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    except (GeometryError, DepthError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    if args.verb == "report":
        _emit(dump(report), args.out)
    else:
        for idx, entry in enumerate(report["characters"]):
            for task in ("chi_report", "hecke_check"):
                if task in entry:
                    print(f"character {idx} {task}: {'PASS' if entry[task]['passed'] else 'FAIL'}")
            if "shimura_check" in entry:
                ok = entry["shimura_check"]["upsilon"]["verdict"]
                verdict = entry["shimura_check"]["fullness"]["verdict"]
                print(f"character {idx} shimura_check: {'PASS' if ok else 'FAIL'} (full algebras {verdict})")
        print("PASS" if report["passed"] else "FAIL")
    return 0 if report["passed"] else 1


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
