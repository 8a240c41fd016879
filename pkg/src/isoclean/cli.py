"""Command line entry point: ``isoclean info|filter|extract|sweep``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from isoclean.filtering import filter_both, filter_components
from isoclean.isosurface import count_cubes, marching_cubes, mesh_component_count, write_mesh
from isoclean.labeling import FilterMode
from isoclean.report import emit, make_row, sweep_isovalues, sweep_thresholds
from isoclean.volume import load_volume, store_nhdr, store_raw, volume_name

EXIT_USAGE = 2
EXIT_FAILURE = 1


class CliError(Exception):
    def __init__(self, message, code=EXIT_FAILURE):
        super().__init__(message)
        self.code = code


def _int_triple(text):
    parts = text.replace("x", ",").split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected NX,NY,NZ, got {text!r}")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None
    if min(dims) < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return dims


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("min-size must be non-negative")
    return value


def _list_of(cast):
    def parse(text):
        try:
            return [cast(p) for p in text.split(",") if p.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


def _add_input(p):
    p.add_argument("input", type=Path, help=".nhdr header or .raw volume")
    p.add_argument("--dims", type=_int_triple, help="NX,NY,NZ for raw input")
    p.add_argument("--type", dest="sample_type",
                   choices=["uint8", "uint16", "int16", "float32"],
                   help="sample type for raw input")
    p.add_argument("--endian", choices=["little", "big"], default="little")


def _add_stats(p):
    p.add_argument("--out-stats", type=Path)
    p.add_argument("--stats-format", choices=["csv", "json"])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isoclean",
        description="Remove small isosurface components by rewriting scalar values.")
    parser.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print grid dimensions, type and value range")
    _add_input(p)
    p.add_argument("--json", action="store_true", help="print a JSON summary instead")

    p = sub.add_parser("filter", help="remove small components and write the volume")
    _add_input(p)
    p.add_argument("--isovalue", type=float, required=True)
    p.add_argument("--min-size", type=_non_negative, required=True,
                   help="components with at most this many vertices are removed")
    p.add_argument("--mode", choices=["above", "below", "both"], default="above")
    p.add_argument("--min-size-above", type=_non_negative,
                   help="override --min-size for the above pass of --mode both")
    p.add_argument("--min-size-below", type=_non_negative,
                   help="override --min-size for the below pass of --mode both")
    p.add_argument("--out-volume", type=Path,
                   help="output .raw, or .nhdr to also write a header")
    _add_stats(p)

    p = sub.add_parser("extract", help="run Marching Cubes and write a mesh")
    _add_input(p)
    p.add_argument("--isovalue", type=float, required=True)
    p.add_argument("--out-mesh", type=Path)
    p.add_argument("--mesh-format", choices=["obj", "ply"])
    p.add_argument("--min-size", type=_non_negative,
                   help="filter small components before extracting")
    p.add_argument("--mode", choices=["above", "below", "both"], default="above")

    p = sub.add_parser("sweep", help="tabulate removal counts over isovalues or sizes")
    _add_input(p)
    p.add_argument("--isovalue", type=float)
    p.add_argument("--min-size", type=_non_negative)
    p.add_argument("--isovalue-list", type=_list_of(float))
    p.add_argument("--min-size-list", type=_list_of(int))
    p.add_argument("--mode", choices=["above", "below"], default="above")
    p.add_argument("--no-extract", action="store_true",
                   help="count active cubes without timing a full extraction")
    _add_stats(p)
    return parser


def _load(args):
    if args.input.suffix.lower() != ".nhdr" and (args.dims is None) != (args.sample_type is None):
        raise CliError("raw input needs both --dims and --type", EXIT_USAGE)
    try:
        grid = load_volume(args.input, args.dims, args.sample_type, args.endian)
    except FileNotFoundError as exc:
        raise CliError(f"cannot read {exc.filename}", EXIT_USAGE) from None
    except (OSError, ValueError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    name = volume_name(args.input)
    return grid, name


def _stats_format(args):
    if args.stats_format:
        return args.stats_format
    if args.out_stats is not None and args.out_stats.suffix.lower() == ".json":
        return "json"
    return "csv"


def cmd_info(args):
    grid, name = _load(args)
    summary = {
        "name": name,
        "dims": list(grid.dims),
        "sample_kind": grid.sample_kind.value,
        "endianness": grid.endianness,
        "spacing": list(grid.spacing),
        "min": float(np.min(grid.samples)),
        "max": float(np.max(grid.samples)),
        "vertices": grid.n_vertices,
        "total_cubes": grid.total_cubes,
    }
    if args.json:
        print(json.dumps(summary, indent=2))
        return 0
    print(f"name         {name}")
    print("dims         {} x {} x {}".format(*grid.dims))
    print(f"sample kind  {grid.sample_kind.value} ({grid.endianness}-endian)")
    print("spacing      {:g} {:g} {:g}".format(*grid.spacing))
    print(f"value range  {summary['min']:g} .. {summary['max']:g}")
    print(f"vertices     {grid.n_vertices}")
    print(f"total cubes  {grid.total_cubes}")
    return 0


def _write_volume(grid, path):
    if path.suffix.lower() == ".nhdr":
        store_nhdr(grid, path, clamp=True)
    else:
        store_raw(grid, path, clamp=True)


def cmd_filter(args):
    grid, name = _load(args)
    t0 = time.perf_counter()
    if args.mode == "both":
        above = args.min_size if args.min_size_above is None else args.min_size_above
        below = args.min_size if args.min_size_below is None else args.min_size_below
        combined = filter_both(grid, args.isovalue, above, below)
        outcomes = list(combined.passes)
        filtered = combined.filtered
    else:
        outcome = filter_components(grid, args.isovalue, args.min_size, FilterMode(args.mode))
        outcomes = [outcome]
        filtered = outcome.filtered
    elapsed = time.perf_counter() - t0

    for outcome in outcomes:
        print(f"{outcome.mode.value}: components {outcome.total_components}, "
              f"components_removed {outcome.components_removed} "
              f"({100.0 * outcome.removed_fraction:.1f}%), "
              f"scalar_values_modified {outcome.scalar_values_modified}")
    if len(outcomes) > 1:
        print(f"combined: components_removed {sum(o.components_removed for o in outcomes)}, "
              f"scalar_values_modified {sum(o.scalar_values_modified for o in outcomes)}")
    print(f"label+filter seconds {elapsed:.3f}", file=sys.stderr)

    if args.out_volume is not None:
        _write_volume(filtered, args.out_volume)
    if args.out_stats is not None:
        census = count_cubes(grid, args.isovalue)
        rows = [make_row(o, census, name, elapsed if len(outcomes) == 1 else 0.0)
                for o in outcomes]
        emit(rows, _stats_format(args), args.out_stats)
    return 0


def cmd_extract(args):
    grid, _ = _load(args)
    if args.min_size is not None:
        if args.mode == "both":
            grid = filter_both(grid, args.isovalue, args.min_size, args.min_size).filtered
        else:
            grid = filter_components(grid, args.isovalue, args.min_size,
                                     FilterMode(args.mode)).filtered
    t0 = time.perf_counter()
    census = count_cubes(grid, args.isovalue)
    mesh = marching_cubes(grid, args.isovalue)
    elapsed = time.perf_counter() - t0
    print(f"active cubes {census.active_cubes} of {census.total_cubes}")
    print(f"vertices {mesh.n_vertices}, triangles {mesh.n_triangles}")
    print(f"mesh components {mesh_component_count(mesh)}")
    print(f"marching cubes seconds {elapsed:.3f}", file=sys.stderr)
    if args.out_mesh is not None:
        write_mesh(mesh, args.out_mesh, args.mesh_format)
    return 0


def cmd_sweep(args):
    if (args.isovalue_list is None) == (args.min_size_list is None):
        raise CliError("give exactly one of --isovalue-list or --min-size-list", EXIT_USAGE)
    grid, name = _load(args)
    mode = FilterMode(args.mode)
    extract = not args.no_extract
    if args.min_size_list is not None:
        if args.isovalue is None:
            raise CliError("--min-size-list needs a fixed --isovalue", EXIT_USAGE)
        rows = sweep_thresholds(grid, args.isovalue, mode, sorted(args.min_size_list),
                                dataset=name, extract=extract)
    else:
        if args.min_size is None:
            raise CliError("--isovalue-list needs a fixed --min-size", EXIT_USAGE)
        rows = sweep_isovalues(grid, args.isovalue_list, args.min_size, mode,
                               dataset=name, extract=extract)
    print(f"{'isovalue':>10} {'min-size':>8} {'total':>8} {'removed':>8} "
          f"{'pct':>7} {'modified':>9} {'active':>9}")
    for r in rows:
        print(f"{r.isovalue:>10g} {r.threshold:>8d} {r.total_components:>8d} "
              f"{r.components_removed:>8d} {r.percent_removed():>7} "
              f"{r.scalar_values_modified:>9d} {r.active_cubes:>9d}")
    total = sum(r.label_filter_seconds for r in rows)
    print(f"label+filter seconds {total:.3f} over {len(rows)} cases", file=sys.stderr)
    if args.out_stats is not None:
        emit(rows, _stats_format(args), args.out_stats)
    return 0


COMMANDS = {"info": cmd_info, "filter": cmd_filter, "extract": cmd_extract, "sweep": cmd_sweep}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"isoclean {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, ValueError) as exc:
        print(f"isoclean {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
