import os
import sys

# Make the sibling grid_oracle helper importable from any invocation directory.
sys.path.insert(0, os.path.dirname(__file__))
