import importlib.machinery
import importlib.util
import os
import sys

# Under ctest, test the freshly built package even when an editable install is present.
_build = os.environ.get("CYID_BUILD_PYTHON")
if _build:
    spec = importlib.machinery.PathFinder.find_spec("cyid", [_build])
    mod = importlib.util.module_from_spec(spec)
    sys.modules["cyid"] = mod
    core = importlib.machinery.PathFinder.find_spec("cyid._core", [os.path.join(_build, "cyid")])
    sys.modules["cyid._core"] = importlib.util.module_from_spec(core)
    core.loader.exec_module(sys.modules["cyid._core"])
    spec.loader.exec_module(mod)
