#!/usr/bin/env python3
"""
Point d'entrée de la ligne de commande (équivalent à python -m sesqui).
"""
import sys

from sesqui.cli import main

if __name__ == "__main__":
    sys.exit(main())
