import sys
from pathlib import Path

# Top-level packages import without installation.
sys.path.insert(0, str(Path(__file__).parent))
