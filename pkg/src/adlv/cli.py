"""Command-line front end.

    adlv --group G.json nonempty --x "t[2]*s1" --b e --method both
    adlv --group G.json crosscheck --maxlen 10 --out scan.csv

Exit status: 0 on success, 1 on usage or input errors, 2 when the alcove
criterion and the reduction oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .afweyl import AffineElement, Frobenius, compose, length
from .alcoves import alcove_witnesses, inner_form_transport, nonempty_basic_criterion
from .errors import AdlvError, InvalidSpec, NotLengthZero
from .expr import format_element, parse_element
from .reduction import class_inventory, crosscheck, get_reducer
from .render import render_svg
from .rootdata import RootDatum, build_root_datum

__all__ = ["CommandConfig", "UsageError", "load_group", "main", "run_command"]

COMMANDS = ("nonempty", "witnesses", "minlen", "crosscheck", "inventory", "render")
EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(AdlvError):
    code = "usage"


@dataclass
class CommandConfig:
    group: str
    command: str
    x: str | None = None
    b: str | None = None
    method: str = "both"
    max_length: int = 6
    out: str | None = None
    format: str | None = None
    twist: str | None = None


def load_group(path: str) -> RootDatum:
    """Read a group spec from a JSON file (or an inline JSON object)."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    elif path.lstrip().startswith("{"):
        text = path
    else:
        raise InvalidSpec(f"no such group spec file: {path}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"group spec is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidSpec("group spec must be a JSON object")
    return build_root_datum(data)


def _need(cfg: CommandConfig, name: str) -> str:
    value = getattr(cfg, name)
    if value is None:
        raise UsageError(f"{cfg.command} needs --{name}")
    return value


def _tf(v: bool) -> str:
    return "true" if v else "false"


def _emit(text: str, cfg: CommandConfig, stdout: TextIO):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


class _Session:
    """Parsed datum, twist and the Frobenius every command works with."""

    def __init__(self, cfg: CommandConfig):
        self.datum = load_group(cfg.group)
        self.z = None
        if cfg.twist is not None:
            self.z = parse_element(self.datum, cfg.twist)
            if length(self.z) != 0:
                raise NotLengthZero(f"--twist {cfg.twist} has length {length(self.z)}")
        self.frob = Frobenius(self.datum, self.z)

    def parse(self, text: str) -> AffineElement:
        return parse_element(self.datum, text)

    def transport(self, x: AffineElement, b: AffineElement):
        """The pair the alcove criterion sees (the untwisted one)."""
        if self.z is None:
            return x, b
        xz, bz, _ = inner_form_transport(x, b, self.z)
        return xz, bz


def _cmd_nonempty(cfg, ses, stdout):
    x, b = ses.parse(_need(cfg, "x")), ses.parse(_need(cfg, "b"))
    if cfg.method not in ("criterion", "oracle", "both"):
        raise UsageError(f"unknown method {cfg.method!r}")
    parts = []
    crit = orc = None
    if cfg.method in ("criterion", "both"):
        crit = nonempty_basic_criterion(*ses.transport(x, b))
        parts.append(f"criterion={_tf(crit)}")
    if cfg.method in ("oracle", "both"):
        orc = get_reducer(ses.datum, ses.frob).nonempty(x, b)
        parts.append(f"oracle={_tf(orc)}")
    if cfg.method == "both":
        parts.append("match" if crit == orc else "MISMATCH")
    stdout.write(" ".join(parts) + "\n")
    return EXIT_DISAGREE if cfg.method == "both" and crit != orc else EXIT_OK


def _cmd_witnesses(cfg, ses, stdout):
    x = ses.parse(_need(cfg, "x"))
    if ses.z is not None:
        x = compose(x, ses.z)
    report = {"x": format_element(x), "witnesses": [w.to_json(ses.datum) for w in alcove_witnesses(x)]}
    _emit(json.dumps(report, indent=2) + "\n", cfg, stdout)
    return EXIT_OK


def _cmd_minlen(cfg, ses, stdout):
    x = ses.parse(_need(cfg, "x"))
    path = get_reducer(ses.datum, ses.frob).descend(x)
    lines = [f"start {format_element(path.start)} (length {length(path.start)})"]
    for st in path.steps:
        lines.append(f"{st.kind:5} {st.s:5} -> {format_element(st.result)} (length {length(st.result)})")
    lines.append(f"minimal {format_element(path.end)} after {len(path)} steps, {path.orbit_nodes} orbit nodes")
    _emit("\n".join(lines) + "\n", cfg, stdout)
    return EXIT_OK


def _cmd_crosscheck(cfg, ses, stdout):
    bs = [ses.parse(cfg.b)] if cfg.b is not None else None
    report = crosscheck(ses.datum, cfg.max_length, bs=bs, z=ses.z)
    summary = json.dumps(report.summary)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            report.write_csv(fh)
        stem = cfg.out[:-4] if cfg.out.endswith(".csv") else cfg.out
        with open(stem + ".summary.json", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(summary + "\n")
        stdout.write(summary + "\n")
    else:
        report.write_csv(stdout)
        sys.stderr.write(summary + "\n")
    return EXIT_DISAGREE if report.disagreements else EXIT_OK


def _cmd_inventory(cfg, ses, stdout):
    entries = class_inventory(ses.datum, cfg.max_length, ses.frob)
    data = {"group": ses.datum.spec.to_json(), "max_length": cfg.max_length, "classes": [e.to_json() for e in entries]}
    _emit(json.dumps(data, indent=2) + "\n", cfg, stdout)
    return EXIT_OK


def _cmd_render(cfg, ses, stdout):
    b = ses.parse(cfg.b) if cfg.b is not None else ses.parse("e")
    if ses.z is not None:
        b = compose(b, ses.z)
    _emit(render_svg(ses.datum, b, cfg.max_length), cfg, stdout)
    return EXIT_OK


_HANDLERS = {
    "nonempty": _cmd_nonempty,
    "witnesses": _cmd_witnesses,
    "minlen": _cmd_minlen,
    "crosscheck": _cmd_crosscheck,
    "inventory": _cmd_inventory,
    "render": _cmd_render,
}
_FORMATS = {"crosscheck": "csv", "witnesses": "json", "inventory": "json", "render": "svg"}


def run_command(cfg: CommandConfig, stdout: TextIO | None = None) -> int:
    """Run one command; raises AdlvError on bad input."""
    stdout = sys.stdout if stdout is None else stdout
    if cfg.command not in _HANDLERS:
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.format is not None and _FORMATS.get(cfg.command) != cfg.format:
        raise UsageError(f"{cfg.command} cannot write format {cfg.format!r}")
    if cfg.max_length < 0:
        raise UsageError("--maxlen must be nonnegative")
    return _HANDLERS[cfg.command](cfg, _Session(cfg), stdout)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adlv", description="Nonemptiness of affine Deligne-Lusztig varieties for basic b.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", required=True, metavar="PATH", help="group spec JSON")
    p.add_argument("--x", metavar="EXPR")
    p.add_argument("--b", metavar="EXPR")
    p.add_argument("--method", choices=("criterion", "oracle", "both"), default="both")
    p.add_argument("--maxlen", type=int, default=6, metavar="N")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--twist", metavar="EXPR", help="length-zero z; work with the Frobenius Ad(z) o delta")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = CommandConfig(
        group=ns.group,
        command=ns.command,
        x=ns.x,
        b=ns.b,
        method=ns.method,
        max_length=ns.maxlen,
        out=ns.out,
        format=ns.format,
        twist=ns.twist,
    )
    try:
        return run_command(cfg)
    except AdlvError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
