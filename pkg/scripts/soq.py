#!/usr/bin/env python3
"""
Point d'entrée de la CLI depuis un checkout (sans installation)
"""
import sys
from pathlib import Path

# Ajouter le répertoire parent au path
sys.path.append(str(Path(__file__).parent.parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
