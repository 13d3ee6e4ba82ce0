# Sphinx configuration of the Wiretap-Core docs
# sphinx-build -b html . _build/html
import os
import sys

sys.path.insert(0, os.path.abspath("../"))

from wiretap_core.service.constants import VERSION  # noqa: E402  pylint: disable=C0413

project = "Wiretap-Core"
copyright = "2024, Wiretap-Core developers"  # pylint: disable=W0622
author = "Wiretap-Core developers"
release = VERSION
version = ".".join(VERSION.split(".")[:2])

extensions = [
    "sphinx_rtd_theme",
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
]

autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "show-inheritance": True}
autodoc_mock_imports = ["aiosqlite"]

# Google-style docstrings only
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_use_param = True
napoleon_use_rtype = True
napoleon_attr_annotations = True

typehints_fully_qualified = False
always_document_param_types = False

html_theme = "sphinx_rtd_theme"
templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
