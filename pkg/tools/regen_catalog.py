#!/usr/bin/env python3
"""Regenerate the bundled catalog data file from the definitions module."""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from wzforge.catalog.definitions import build_catalog_json  # noqa: E402


def main() -> None:
    out = ROOT / "src/wzforge/catalog/data/catalog.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(build_catalog_json(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
