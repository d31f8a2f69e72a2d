import sys

import networkx
import sympy
from box import Box

TOOL_VERSION = "0.1.0"

# merged flag / environment values of the running command
runtime_env_vars = Box(default_box=True, default_box_attr=None)

versions = Box(
    {
        "tool_version": TOOL_VERSION,
        "python_version": ".".join([str(x) for x in sys.version_info[0:3]]),
        "sympy_version": sympy.__version__,
        "networkx_version": networkx.__version__,
    }
)
