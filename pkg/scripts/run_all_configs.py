#!/usr/bin/env python3
"""Regenerate every dataset defined under configs/.

Each config is executed through the CLI entry point, so the outputs are
byte-identical to what `optomech <config>` produces.  Results land under
results/<config-stem>/ next to the repository root unless --output-root
points elsewhere.
"""

import argparse
import sys
from pathlib import Path

from optomech.cli import main as run_config

REPO_ROOT = Path(__file__).resolve().parents[1]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--config-dir",
        type=Path,
        default=REPO_ROOT / "configs",
        help="directory holding the JSON run configs",
    )
    parser.add_argument(
        "--output-root",
        type=Path,
        default=REPO_ROOT / "results",
        help="directory that receives one subdirectory per config",
    )
    args = parser.parse_args(argv)

    configs = sorted(args.config_dir.glob("*.json"))
    if not configs:
        print(f"no configs found under {args.config_dir}", file=sys.stderr)
        return 1

    failures = 0
    for config in configs:
        out_dir = args.output_root / config.stem
        print(f"== {config.name} -> {out_dir}")
        code = run_config([str(config), "--output-dir", str(out_dir)])
        if code != 0:
            print(f"   exited with code {code}", file=sys.stderr)
            failures += 1
    if failures:
        print(f"{failures}/{len(configs)} configs failed", file=sys.stderr)
        return 2
    print(f"all {len(configs)} configs completed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
