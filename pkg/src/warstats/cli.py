"""Command-line pipeline: ingest, series, ccdf, fit, acf, spectrum, report, synth.

Each subcommand reads CSV and writes CSV/JSON so stages compose through
files. Outputs are deterministic; no timestamps unless --timestamp is given.

Exit codes: 0 success, 2 input format error, 3 numeric failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from . import dist, series as series_mod, synth, timefreq
from .catalog import DEFAULT_WINDOW, ConflictCatalog, PopulationTable, parse_catalog, parse_population
from .errors import DegenerateInputError, FitError, FormatError, RangeError, WarstatsError
from .series import AnnualSeries, EventSeries

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like 1400:2000, got {text!r}")


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like LO:HI, got {text!r}")


def _load_catalog(args) -> ConflictCatalog:
    with open(args.catalog, newline="", encoding="utf-8") as fh:
        return parse_catalog(fh, window=args.window, delimiter=args.delimiter)


def _load_population(args) -> PopulationTable:
    with open(args.population, newline="", encoding="utf-8") as fh:
        return parse_population(fh, delimiter=args.delimiter)


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _series_rows(s: AnnualSeries | EventSeries):
    if isinstance(s, AnnualSeries):
        return ["year", "value"], [(y, repr(v)) for y, v in zip(s.years, s.values)]
    return ["ordinal", "value"], [(e.ordinal, repr(e.value)) for e in s.events]


def _read_series_csv(path: str) -> tuple[list[float], list[float]]:
    """Read a two-column CSV (header + numeric rows), returning (keys, values)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file") from None
        keys, values = [], []
        for row in reader:
            if len(row) < 2:
                raise FormatError(f"{path}: expected 2 columns, got {len(row)}")
            keys.append(float(row[0]))
            values.append(float(row[1]))
    if not values:
        raise FormatError(f"{path}: no data rows")
    return keys, values


# ---------------------------------------------------------------- subcommands

def cmd_ingest(args) -> int:
    catalog = _load_catalog(args)
    out = {"window": list(args.window), "catalog": catalog.report.as_dict()}
    if args.population:
        table = _load_population(args)
        out["population"] = {"anchors": len(table.anchors), "year_min": table.year_min, "year_max": table.year_max}
    json.dump(out, sys.stdout, indent=2)
    print()
    return EXIT_OK


def cmd_series(args) -> int:
    catalog = _load_catalog(args)
    if args.kind == "wars-per-year":
        s = series_mod.wars_per_year(catalog, attribute_start=args.attribute_start)
    elif args.kind == "fatalities-per-year":
        s = series_mod.fatalities_per_year(catalog)
    else:
        s = series_mod.fatalities_per_war(catalog)
    if args.normalize:
        if not args.population:
            raise FormatError("--normalize requires --population")
        s = series_mod.normalize_per_capita(s, _load_population(args))
    header, rows = _series_rows(s)
    _write_csv(Path(args.out), header, rows)
    return EXIT_OK


def cmd_ccdf(args) -> int:
    _, values = _read_series_csv(args.series)
    samples = [v for v in values if v > 0]
    if not samples:
        raise DegenerateInputError("no positive samples in series")
    step = args.step if args.step is not None else max(samples) / 1000.0
    ccdf = dist.empirical_ccdf(samples, step)
    _write_csv(Path(args.out), ["x", "prob"], [(repr(x), repr(p)) for x, p in zip(ccdf.grid, ccdf.probs)])
    return EXIT_OK


def cmd_fit(args) -> int:
    xs, ps = _read_series_csv(args.ccdf)
    ccdf = dist.EmpiricalCcdf(tuple(xs), tuple(ps), n_samples=len(xs))
    if args.tail_min is not None:
        result = dist.fit_tail(ccdf, args.tail_min)
    elif args.model == "loggaussian":
        result = dist.fit_log_gaussian(ccdf, args.fit_range)
    else:
        result = dist.fit_power_law(ccdf, args.fit_range)
    if args.strict and not result.converged:
        print("fit did not converge", file=sys.stderr)
        return EXIT_NUMERIC
    json.dump(result.as_dict(), sys.stdout, indent=2)
    print()
    return EXIT_OK


def cmd_acf(args) -> int:
    _, values = _read_series_csv(args.series)
    acf = timefreq.autocorrelation(values)
    rows = [
        (lag, repr(r), repr(se), repr(acf.se_white))
        for lag, r, se in zip(acf.lags, acf.r, acf.se_bartlett)
    ]
    _write_csv(Path(args.out), ["lag", "r", "se_bartlett", "se_white"], rows)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    _, values = _read_series_csv(args.series)
    spec = timefreq.periodogram(values)
    _write_csv(
        Path(args.out),
        ["freq_cycles_per_year", "power"],
        [(repr(f), repr(p)) for f, p in zip(spec.freqs, spec.power)],
    )
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.kind == "powerlaw":
        data = synth.gen_power_law(args.n, args.exponent, args.x_min, args.seed)
    elif args.kind == "lognormal":
        data = synth.gen_lognormal(args.n, args.mu, args.sigma, args.seed)
    elif args.kind == "whitenoise":
        data = synth.gen_white_noise(args.n, args.seed)
    else:
        data = synth.gen_sinusoid(args.n, args.period, args.amplitude, args.noise_sd, args.seed)
    _write_csv(Path(args.out), ["index", "value"], [(i, repr(v)) for i, v in enumerate(data)])
    return EXIT_OK


# ------------------------------------------------------------------ pipeline

def _ccdf_block(samples, step: Optional[float], tail_min: Optional[float], fit_range, normalized: bool):
    """Build a CCDF and its fits; returns (ccdf, fitted-curve columns, fit dicts)."""
    if normalized:
        # per-capita values are tiny; a 1000-point uniform grid replaces the
        # raw-count step (which --step controls)
        step = max(samples) / 1000.0
    elif step is None:
        step = 1000.0
    ccdf = dist.empirical_ccdf(samples, step)
    import numpy as np

    x = np.asarray(ccdf.grid)
    columns: dict[str, list] = {}
    fits: list[dict] = []
    if normalized:
        # normalized distributions follow a plain power law over the full grid
        positive = [i for i, p in enumerate(ccdf.probs) if p > 0]
        rng = (float(ccdf.grid[positive[0]]), float(ccdf.grid[positive[-1]]))
        fit = dist.fit_power_law(ccdf, rng)
        fits.append(fit.as_dict())
        columns["powerlaw"] = fit.model(x).tolist()
    else:
        rng = fit_range if fit_range is not None else dist.default_trim_range(ccdf)
        lg = dist.fit_log_gaussian(ccdf)
        pl = dist.fit_power_law(ccdf, rng)
        tmin = tail_min if tail_min is not None else dist.default_tail_threshold(samples, ccdf)
        tail = dist.fit_tail(ccdf, tmin)
        fits.extend([lg.as_dict(), pl.as_dict(), tail.as_dict()])
        columns["loggaussian"] = lg.model(x).tolist()
        columns["powerlaw_trim"] = pl.model(x).tolist()
        columns["powerlaw_tail"] = tail.model(x).tolist()
    return ccdf, columns, fits


def _analyze_series(name: str, values, outdir: Path, written: list[Path], args, normalized: bool):
    """CCDF+fits, ACF, spectrum and whiteness for one fatality series."""
    samples = [v for v in values if v > 0]
    ccdf, columns, fits = _ccdf_block(samples, args.step, args.tail_min, args.fit_range, normalized)
    path = outdir / f"ccdf_{name}.csv"
    header = ["x", "prob"] + list(columns)
    rows = [
        [repr(ccdf.grid[i]), repr(ccdf.probs[i])] + [repr(columns[c][i]) for c in columns]
        for i in range(len(ccdf.grid))
    ]
    _write_csv(path, header, rows)
    written.append(path)

    acf = timefreq.autocorrelation(values)
    fraction, verdict = timefreq.whiteness_check(acf)
    path = outdir / f"acf_{name}.csv"
    _write_csv(
        path,
        ["lag", "r", "se_bartlett", "se_white"],
        [(lag, repr(r), repr(se), repr(acf.se_white)) for lag, r, se in zip(acf.lags, acf.r, acf.se_bartlett)],
    )
    written.append(path)

    spec = timefreq.periodogram(values)
    path = outdir / f"spectrum_{name}.csv"
    _write_csv(path, ["freq_cycles_per_year", "power"], [(repr(f), repr(p)) for f, p in zip(spec.freqs, spec.power)])
    written.append(path)

    peak = max(range(1, len(spec.power)), key=lambda k: spec.power[k])
    return {
        "series": name,
        "n_samples": len(samples),
        "fits": fits,
        "acf": {"T": acf.T, "se_white": acf.se_white, "fraction_inside": fraction, "verdict": verdict},
        "spectrum_peak": {"freq": spec.freqs[peak], "power": spec.power[peak]},
    }


def cmd_report(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        catalog = _load_catalog(args)
        table = _load_population(args) if args.population else None

        wars = series_mod.wars_per_year(catalog, attribute_start=args.attribute_start)
        fat_year = series_mod.fatalities_per_year(catalog)
        fat_war = series_mod.fatalities_per_war(catalog)

        plain = {"wars_per_year": wars, "fatalities_per_year": fat_year, "fatalities_per_war": fat_war}
        normed = {}
        if table is not None and not args.no_normalize:
            for key, s in plain.items():
                normed[key + "_normalized"] = series_mod.normalize_per_capita(s, table)

        for key, s in {**plain, **normed}.items():
            header, rows = _series_rows(s)
            path = outdir / f"series_{key}.csv"
            _write_csv(path, header, rows)
            written.append(path)

        blocks = [
            _analyze_series("fatalities_per_year", list(fat_year.values), outdir, written, args, False),
            _analyze_series("fatalities_per_war", [e.value for e in fat_war.events], outdir, written, args, False),
        ]
        if "fatalities_per_year_normalized" in normed:
            blocks.append(
                _analyze_series(
                    "fatalities_per_year_normalized",
                    list(normed["fatalities_per_year_normalized"].values),
                    outdir, written, args, True,
                )
            )
            blocks.append(
                _analyze_series(
                    "fatalities_per_war_normalized",
                    [e.value for e in normed["fatalities_per_war_normalized"].events],
                    outdir, written, args, True,
                )
            )

        report = {
            "version": __version__,
            "dataset": {
                "window": list(args.window),
                "catalog": catalog.report.as_dict(),
                "zero_fatality_years": series_mod.zero_year_count(fat_year),
                "n_years": catalog.n_years,
            },
            "series": blocks,
            "options": {
                "catalog": str(args.catalog),
                "population": str(args.population) if args.population else None,
                "window": f"{args.window[0]}:{args.window[1]}",
                "step": args.step,
                "fit_range": list(args.fit_range) if args.fit_range else None,
                "tail_min": args.tail_min,
                "attribute_start": args.attribute_start,
                "no_normalize": args.no_normalize,
                "delimiter": args.delimiter,
            },
        }
        if args.timestamp:
            import datetime

            report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        path = outdir / "report.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        written.append(path)
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return EXIT_OK


# -------------------------------------------------------------------- parser

def build_parser(defaults: Optional[dict] = None) -> argparse.ArgumentParser:
    defaults = defaults or {}

    def req(name: str) -> bool:
        return name not in defaults

    parser = argparse.ArgumentParser(prog="warstats", description=__doc__)
    parser.add_argument("--config", type=str, default=None, help="JSON file of option defaults; flags override")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: list[argparse.ArgumentParser] = []

    def add_parser(name: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        subparsers.append(p)
        return p

    def add_catalog_opts(p):
        p.add_argument("--catalog", required=req("catalog"), help="conflict catalog CSV")
        p.add_argument("--population", default=None, help="population anchor CSV")
        p.add_argument("--window", type=_parse_window, default=DEFAULT_WINDOW, metavar="LO:HI")
        p.add_argument("--delimiter", default=",", metavar="CHAR")

    p = add_parser("ingest", help="validate inputs and report row counts")
    add_catalog_opts(p)
    p.set_defaults(func=cmd_ingest)

    p = add_parser("series", help="emit one time series as CSV")
    add_catalog_opts(p)
    p.add_argument("--kind", choices=["wars-per-year", "fatalities-per-year", "fatalities-per-war"], required=req("kind"))
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--attribute-start", action="store_true", help="count wars at onset year instead of end year")
    p.add_argument("--out", required=req("out"))
    p.set_defaults(func=cmd_series)

    p = add_parser("ccdf", help="empirical CCDF of a series CSV")
    p.add_argument("--series", required=req("series"), help="two-column series CSV")
    p.add_argument("--step", type=float, default=None, metavar="N")
    p.add_argument("--out", required=req("out"))
    p.set_defaults(func=cmd_ccdf)

    p = add_parser("fit", help="fit a model to a CCDF CSV, print JSON")
    p.add_argument("--ccdf", required=req("ccdf"))
    p.add_argument("--model", choices=["powerlaw", "loggaussian"], default="powerlaw")
    p.add_argument("--fit-range", type=_parse_range, default=None, metavar="LO:HI")
    p.add_argument("--tail-min", type=float, default=None, metavar="X")
    p.add_argument("--strict", action="store_true", help="non-convergence is a failure (exit 3)")
    p.set_defaults(func=cmd_fit)

    p = add_parser("acf", help="autocorrelation with error bands")
    p.add_argument("--series", required=req("series"))
    p.add_argument("--out", required=req("out"))
    p.set_defaults(func=cmd_acf)

    p = add_parser("spectrum", help="FFT periodogram")
    p.add_argument("--series", required=req("series"))
    p.add_argument("--out", required=req("out"))
    p.set_defaults(func=cmd_spectrum)

    p = add_parser("synth", help="emit seeded synthetic data")
    p.add_argument("--kind", choices=["powerlaw", "lognormal", "whitenoise", "sinusoid"], required=req("kind"))
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1, metavar="N")
    p.add_argument("--exponent", type=float, default=-2.0)
    p.add_argument("--x-min", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--period", type=float, default=50.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--noise-sd", type=float, default=0.0)
    p.add_argument("--out", required=req("out"))
    p.set_defaults(func=cmd_synth)

    p = add_parser("report", help="run the full pipeline into an output directory")
    add_catalog_opts(p)
    p.add_argument("--step", type=float, default=None, metavar="N")
    p.add_argument("--fit-range", type=_parse_range, default=None, metavar="LO:HI")
    p.add_argument("--tail-min", type=float, default=None, metavar="X")
    p.add_argument("--attribute-start", action="store_true")
    p.add_argument("--no-normalize", action="store_true", help="skip per-capita variants")
    p.add_argument("--timestamp", action="store_true", help="embed a wall-clock timestamp in the report")
    p.add_argument("--out", required=req("out"), metavar="DIR")
    p.set_defaults(func=cmd_report)

    if defaults:
        clean = {k.replace("-", "_"): v for k, v in defaults.items()}
        parser.set_defaults(**clean)
        for sp in subparsers:
            sp.set_defaults(**clean)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args, _ = parser.parse_known_args(argv)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_FORMAT
        parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, DegenerateInputError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except WarstatsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
