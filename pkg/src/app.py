"""
Main Application Class for Irrational Base Nets
"""

import argparse
import sys

from .models.numeration import BaseSpec, from_float, g_value
from .models.point_set import dumps, read_csv
from .utils import reports
from .utils.config import NetConfig, RunConfig
from .utils.discrepancy import DiscrepancyCalculator
from .utils.equidist import NetVerifier
from .utils.errors import (
    ConstructionError,
    DomainError,
    InputFormatError,
    IrrnetError,
    PreconditionError,
)
from .utils.generators import generate, vdc_terms

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


class IrrationalNetsApp:
    """Command-line application: generate, verify, disc, table and partition."""

    def __init__(self, debug, stdout=None):
        """Initialize the application."""
        self.debug = debug
        self.stdout = stdout or sys.stdout
        self.setup_app()

    def setup_app(self):
        """Build the argument parser."""
        parser = argparse.ArgumentParser(
            prog=NetConfig.APP_NAME,
            description="Low-discrepancy point sets in quadratic irrational bases",
        )
        parser.add_argument("--verbose", action="store_true", help="log progress")
        parser.add_argument("--version", action="version", version=f"%(prog)s {NetConfig.VERSION}")
        sub = parser.add_subparsers(dest="command", required=True)

        def common(p, construction=True):
            p.add_argument("--base", default="phi", help="'phi' or 'p,q' (default phi)")
            p.add_argument("--m", type=int, help="size index: the set has G_m points")
            p.add_argument("--out", dest="output", help="output file (default stdout)")
            p.add_argument("--verbose", action="store_true", help=argparse.SUPPRESS)
            if construction:
                p.add_argument("--construction", default="hammersley", choices=NetConfig.CONSTRUCTIONS)
                p.add_argument("--count", type=int, help="number of van der Corput terms")
                p.add_argument("--seed-x", type=float, help="weak12 seed, first coordinate")
                p.add_argument("--seed-y", type=float, help="weak12 seed, second coordinate")

        gen = sub.add_parser("generate", help="write a point set as CSV")
        common(gen)
        gen.add_argument("--no-digits", dest="digits", action="store_false",
                         help="omit the exact digit columns")

        ver = sub.add_parser("verify", help="net parameter of a point set as JSON")
        common(ver)
        ver.add_argument("--input", help="point-set CSV to verify instead of a construction")
        ver.add_argument("--t", type=int, default=0, help="requested net parameter")
        ver.add_argument("--format", default="json", choices=["json"])
        ver.add_argument("--strict-rho", action="store_true",
                         help="bound the plain level sum instead of rho")
        ver.add_argument("--groups", action="store_true", help="also check groups of four")
        ver.add_argument("--k-max", type=int, default=10, help="sequence windows per level")
        ver.add_argument("--window-shift", default="m+1", choices=["m+1", "m"])

        disc = sub.add_parser("disc", help="star or L2 discrepancy as CSV")
        common(disc)
        disc.add_argument("--input", help="point-set CSV instead of a construction")
        disc.add_argument("--measure", default="star", choices=NetConfig.MEASURES)
        disc.add_argument("--no-normalize", dest="normalize", action="store_false")

        table = sub.add_parser("table", help="normalized star discrepancy of Hammersley sets")
        common(table, construction=False)

        part = sub.add_parser("partition", help="cells of the level-0..m partitions as CSV")
        common(part, construction=False)

        self.parser = parser

    def make_config(self, args):
        """Turn parsed arguments into a validated RunConfig."""
        p, q = NetConfig.parse_base(args.base)
        seed = None
        seed_x, seed_y = getattr(args, "seed_x", None), getattr(args, "seed_y", None)
        if (seed_x is None) != (seed_y is None):
            raise DomainError("--seed-x and --seed-y go together")
        if seed_x is not None:
            seed = (seed_x, seed_y)
        return RunConfig(
            command=args.command,
            base=(p, q),
            m=args.m,
            count=getattr(args, "count", None),
            construction=getattr(args, "construction", "hammersley"),
            t=getattr(args, "t", 0),
            output=args.output,
            input=getattr(args, "input", None),
            format=getattr(args, "format", "csv"),
            seed=seed,
            strict_rho=getattr(args, "strict_rho", False),
            normalize=getattr(args, "normalize", True),
            measure=getattr(args, "measure", "star"),
            groups=getattr(args, "groups", False),
            k_max=getattr(args, "k_max", 10),
            window_shift=getattr(args, "window_shift", "m+1"),
            digits=getattr(args, "digits", True),
        )

    def run(self, argv=None):
        """
        Run one command.

        Returns:
            int: 0 pass, 1 property failure, 2 usage error, 3 input error
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE
        try:
            cfg = self.make_config(args)
            handler = getattr(self, f"run_{cfg.command}")
            return handler(cfg)
        except (PreconditionError, ConstructionError) as e:
            self.debug.error(f"{NetConfig.APP_NAME}: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAIL
        except InputFormatError as e:
            self.debug.error(f"{NetConfig.APP_NAME}: {e}")
            print(f"input error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except OSError as e:
            self.debug.error(f"{NetConfig.APP_NAME}: {e}")
            print(f"input error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except IrrnetError as e:
            self.debug.error(f"{NetConfig.APP_NAME}: {e}")
            print(f"usage error: {e}", file=sys.stderr)
            return EXIT_USAGE

    def _emit(self, text, cfg):
        reports.write_text(text, cfg.output, self.stdout)

    def _base(self, cfg):
        return BaseSpec(*cfg.base)

    def _seed(self, cfg):
        if cfg.seed is None:
            return None
        base = BaseSpec.phi()
        return tuple(from_float(base, v) for v in cfg.seed)

    def _point_set(self, cfg):
        if cfg.input:
            return read_csv(cfg.input, self.debug)
        if cfg.m is None and not (cfg.construction == "vdc" and cfg.count):
            raise DomainError("give --m (or --count for vdc) or --input")
        return generate(cfg.construction, self._base(cfg), cfg.m, cfg.count, self._seed(cfg), self.debug)

    def run_generate(self, cfg):
        point_set = self._point_set(cfg)
        self.debug.info(f"Generate: {cfg.construction} in base {self._base(cfg)}, {len(point_set)} points")
        self._emit(dumps(point_set, cfg.digits), cfg)
        return EXIT_OK

    def run_verify(self, cfg):
        verifier = NetVerifier(self.debug, cfg.strict_rho)
        if cfg.input is None and cfg.construction == "vdc" and cfg.m is not None:
            return self._verify_sequence(cfg, verifier)
        point_set = self._point_set(cfg)
        report = verifier.net_t(point_set)
        groups = verifier.check_groups_of_four(point_set) if cfg.groups else None
        self._emit(reports.net_json(report, cfg.t, groups), cfg)
        passed = report.t_min <= cfg.t and (groups is None or groups.passed)
        if not passed and report.worst is not None:
            self.debug.warning(f"Verify: t_min={report.t_min}, witness {report.worst.kvec}")
        return EXIT_OK if passed else EXIT_FAIL

    def _verify_sequence(self, cfg, verifier):
        """The van der Corput stream, checked window by window as a (t,1)-sequence."""
        base = self._base(cfg)
        if not base.is_phi:
            raise DomainError("sequence windows are checked in base phi")
        report = verifier.verify_sequence(
            lambda n: vdc_terms(base, n), cfg.t, cfg.m, cfg.k_max, cfg.window_shift
        )
        self._emit(reports.sequence_json(report), cfg)
        return EXIT_OK if report.passed else EXIT_FAIL

    def run_disc(self, cfg):
        point_set = self._point_set(cfg)
        calculator = DiscrepancyCalculator(self.debug, cfg.threads)
        results = []
        if cfg.measure in ("star", "both"):
            if point_set.s == 1:
                results.append(calculator.star_1d(point_set, cfg.normalize))
            elif point_set.s == 2:
                results.append(calculator.star_2d(point_set, cfg.normalize))
            else:
                raise DomainError("star discrepancy is computed for s <= 2")
        if cfg.measure in ("l2", "both"):
            results.append(calculator.l2(point_set, normalized=cfg.normalize))
        self._emit(reports.disc_csv(results), cfg)
        return EXIT_OK

    def _table_levels(self, cfg, base):
        if cfg.m is not None:
            return range(1, cfg.m + 1)
        top = 1
        while g_value(base, top + 1) <= NetConfig.TABLE_MAX_N:
            top += 1
        return range(1, top + 1)

    def run_table(self, cfg):
        base = self._base(cfg)
        calculator = DiscrepancyCalculator(self.debug, cfg.threads)
        results = []
        for m in self._table_levels(cfg, base):
            point_set = generate("hammersley", base, m)
            result = calculator.star_2d(point_set)
            self.debug.info(f"Table: base {base}, N={result.n}, normalized {result.normalized:.4f}")
            results.append(result)
        self._emit(reports.table_csv(results), cfg)
        return EXIT_OK

    def run_partition(self, cfg):
        base = self._base(cfg)
        m = 3 if cfg.m is None else cfg.m
        self._emit(reports.partition_csv(base, range(m + 1)), cfg)
        return EXIT_OK
