import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from hypothesis import settings

settings.register_profile("repro", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("repro")
