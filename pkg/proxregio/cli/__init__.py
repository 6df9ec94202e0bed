from proxregio.cli.commands import COMMANDS, CommandResult, run_command
from proxregio.cli.scene_io import load_scene, parse_scene, serialize_scene

__all__ = ["COMMANDS", "CommandResult", "load_scene", "parse_scene", "run_command", "serialize_scene"]
