#!/usr/bin/env python3
"""
Script to generate a sample `key = value` config file for a zeno-thermal subcommand
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import COMMAND_DEFAULTS  # noqa: E402


def render_config(command):
    """Render the defaults of one subcommand as a commented config file"""
    if command not in COMMAND_DEFAULTS:
        raise KeyError(f"unknown command {command!r}; choose from {', '.join(COMMAND_DEFAULTS)}")
    lines = [
        f"# zeno-thermal {command} configuration",
        "# Flags of the same name (dashes for underscores) override these values",
        "",
    ]
    for key, value in COMMAND_DEFAULTS[command].items():
        if isinstance(value, bool):
            value = 'true' if value else 'false'
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def generate_config(command, output_path):
    """Write the sample config and return the number of keys"""
    text = render_config(command)
    Path(output_path).write_text(text, encoding='utf-8')
    count = len(COMMAND_DEFAULTS[command])
    print(f"✓ Generated {output_path} with {count} keys")
    return count


if __name__ == '__main__':
    if len(sys.argv) not in (2, 3):
        print(f"Usage: {sys.argv[0]} <command> [output path]")
        print(f"Commands: {', '.join(COMMAND_DEFAULTS)}")
        sys.exit(2)

    command = sys.argv[1]
    output_path = sys.argv[2] if len(sys.argv) == 3 else f"{command}.conf"

    try:
        generate_config(command, output_path)
    except KeyError as e:
        print(f"❌ {e}")
        sys.exit(2)

    print("\nNext steps:")
    print(f"1. Edit {output_path}")
    print(f"2. Run: zeno-thermal {command} --config {output_path} --out {command}.csv")
