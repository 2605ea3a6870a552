"""Validates every shipped preset against the config schema and checks that
each preset has a well-formed expected-results file."""

import json
import pathlib
import sys

import jsonschema


def main(schema_path, preset_dir):
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    presets = sorted(p for p in pathlib.Path(preset_dir).glob("*.json") if not p.name.endswith(".expected.json"))
    if not presets:
        print("no presets found in", preset_dir)
        return 1
    failures = 0
    for path in presets:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for e in errors:
            print(f"{path.name}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        expected = path.with_name(path.stem + ".expected.json")
        if not expected.exists():
            print(f"{path.name}: missing {expected.name}")
            failures += 1
        else:
            checks = json.loads(expected.read_text()).get("checks")
            if not isinstance(checks, list) or not checks or not all("path" in c for c in checks):
                print(f"{expected.name}: needs a non-empty checks array with a path on every entry")
                failures += 1
        failures += len(errors)
        print(f"{path.name}: {'ok' if not errors else 'invalid'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
