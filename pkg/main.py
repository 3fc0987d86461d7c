"""
steiner-posets – Einstiegspunkt

Reicht die Kommandozeile an app.cli weiter; gleichwertig zum installierten
Skript `steiner-posets`.
"""
import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
