import os
import sys


def pytest_configure(config):
    module_dir = os.environ.get("QLM_PYMODULE_DIR")
    if module_dir and module_dir not in sys.path:
        sys.path.insert(0, module_dir)
