"""Regenerate the JSON fixtures shipped with the package."""
import argparse

from ordsynth.fixtures import FIXTURE_DIR, write_fixtures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", default=FIXTURE_DIR)
    args = ap.parse_args()
    for path in write_fixtures(args.dir):
        print(path)


if __name__ == "__main__":
    main()
