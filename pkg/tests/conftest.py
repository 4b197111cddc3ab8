import sys
from pathlib import Path

# Allow importing the oracle helpers that live next to the tests.
sys.path.insert(0, str(Path(__file__).parent))
