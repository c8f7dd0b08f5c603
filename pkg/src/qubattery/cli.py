"""Command-line front end: run one charging scenario and write its CSV.

Exit codes: 0 success, 1 configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .scenarios import SCENARIOS, default_config, emit_csv, run_scenario

_CONFIG_KEYS = ("delta", "j_over_omega", "gamma", "steps", "out")


class _ArgumentParser(argparse.ArgumentParser):
    # route argparse usage failures through ConfigError so they exit with 1
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="qubattery",
        description="Simulate spin-chain battery charging and emit a CSV trace or sweep.",
    )
    parser.add_argument("scenario", help="one of: " + ", ".join(SCENARIOS))
    parser.add_argument("--delta", type=float, nargs="+", metavar="D",
                        help="anisotropy value(s)")
    parser.add_argument("--j-over-omega", type=float, nargs="+", metavar="J",
                        dest="j_over_omega", help="coupling(s) in units of Omega")
    parser.add_argument("--gamma", type=float, nargs="+", metavar="G",
                        help="dephasing rate(s) in units of Omega")
    parser.add_argument("--steps", type=int, metavar="N",
                        help="samples on [0, t_min]; odd, >= 201 (default 1001)")
    parser.add_argument("--out", metavar="PATH", help="output CSV path")
    parser.add_argument("--config", metavar="FILE",
                        help="key=value file providing the options above; flags override")
    return parser


def parse_config_file(path: str) -> dict:
    """Read a line-based key=value options file."""
    options: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key == "out":
                options[key] = value
            elif key == "steps":
                try:
                    options[key] = int(value)
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: steps must be an integer") from None
            else:
                try:
                    options[key] = tuple(float(v) for v in value.replace(",", " ").split())
                except ValueError:
                    raise ConfigError(f"{path}:{lineno}: could not parse numbers in {value!r}") from None
    return options


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        options = parse_config_file(args.config) if args.config else {}
        for key in _CONFIG_KEYS:
            value = getattr(args, key)
            if value is not None:
                options[key] = value
        config = default_config(args.scenario, **options)
        result = run_scenario(config)
        emit_csv(result, config.output_path)
    except ConfigError as exc:
        print(f"qubattery: config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qubattery: io error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
