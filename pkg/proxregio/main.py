from __future__ import annotations

import sys
from collections.abc import Sequence

from proxregio.cli.app_factory import configure_logging, create_parser
from proxregio.cli.commands import EXIT_USAGE, run_command
from proxregio.cli.scene_io import load_scene
from proxregio.core.errors import SceneParseError


def main(argv: Sequence[str] | None = None) -> int:
    args = create_parser().parse_args(argv)
    configure_logging(args.verbose)

    scene = None
    if getattr(args, "scene", None):
        try:
            scene = load_scene(args.scene)
        except SceneParseError as err:
            sys.stderr.write(f"error: {args.scene}: {err.message}\n")
            return EXIT_USAGE

    flags = {k: v for k, v in vars(args).items() if k not in ("command", "scene", "verbose")}
    result = run_command(args.command, scene, flags)
    stream = sys.stdout if result.exit_code != EXIT_USAGE else sys.stderr
    stream.write(result.text)
    return result.exit_code
