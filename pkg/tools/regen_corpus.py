"""Rebuild src/aic/corpus/proofs/*.proof from the Python sources in corpus/authoring.py."""

import argparse
import sys

from aic.corpus import PROOF_DIR
from aic.corpus.authoring import all_scripts
from aic.corpus.kind import gen_kind_proof
from aic.script import dump_script

KIND_STORED = (1, 2, 3)


def rendered() -> dict[str, str]:
    scripts = all_scripts() + [gen_kind_proof(k) for k in KIND_STORED]
    return {s.name: dump_script(s) for s in scripts}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="only report files that are out of date")
    args = ap.parse_args(argv)
    stale = []
    PROOF_DIR.mkdir(exist_ok=True)
    for name, text in rendered().items():
        path = PROOF_DIR / f"{name}.proof"
        if not path.exists() or path.read_text() != text:
            stale.append(name)
            if not args.check:
                path.write_text(text)
    for name in stale:
        print(("stale " if args.check else "wrote ") + name)
    return 1 if args.check and stale else 0


if __name__ == "__main__":
    sys.exit(main())
