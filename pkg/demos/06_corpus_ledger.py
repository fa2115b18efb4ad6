# The full ledger over the bundled 50-curve corpus.
import sys

from levelbound.ledger import LedgerOptions, bundled_corpus, dumps, run_ledger

report = run_ledger(bundled_corpus(), LedgerOptions(), workers=1)
print(report["summary"])
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(dumps(report))
