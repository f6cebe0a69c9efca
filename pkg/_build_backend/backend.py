"""Packaging shim: setuptools' PEP 517 backend without executing ./setup.py.

The repository's setup.py is the interactive development-environment script,
not a setuptools script, so metadata comes solely from pyproject.toml.
"""

from setuptools import build_meta as _orig


class _Backend(_orig._BuildMetaBackend):
    def run_setup(self, setup_script="setup.py"):
        super().run_setup(setup_script="_no_setup_script_.py")


_BACKEND = _Backend()

get_requires_for_build_wheel = _BACKEND.get_requires_for_build_wheel
get_requires_for_build_sdist = _BACKEND.get_requires_for_build_sdist
prepare_metadata_for_build_wheel = _BACKEND.prepare_metadata_for_build_wheel
build_wheel = _BACKEND.build_wheel
build_sdist = _BACKEND.build_sdist
get_requires_for_build_editable = _BACKEND.get_requires_for_build_editable
prepare_metadata_for_build_editable = _BACKEND.prepare_metadata_for_build_editable
build_editable = _BACKEND.build_editable
