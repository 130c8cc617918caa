"""Command-line entry point for whylog.

    python whylog.py check fixtures/example2.mod w2 "Ky[i] p" --trace
    python whylog.py prove fixtures/5yk.proof
    python whylog.py fuzz SKYI --trials 500 --seed 1

Settings are read from WHYLOG_* variables and a local .env file by src.config.
"""

from src.cli import run

if __name__ == "__main__":
    run()
