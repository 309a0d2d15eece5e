# Sphinx configuration for the drinfeld_rh documentation.
#
# The package must be importable (pip install -e .) for autodoc.

# -- Project information -----------------------------------------------------

project = "drinfeld_rh"
copyright = "2026, drinfeld_rh developers"
author = "drinfeld_rh developers"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
]

# Only the packages the docstrings cross-reference
intersphinx_mapping = {
    "caput": ("https://caput.readthedocs.io/en/latest/", None),
    "galois": ("https://mhostetter.github.io/galois/latest/", None),
}
intersphinx_cache_limit = 1

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False
napoleon_use_param = True
napoleon_use_rtype = True
napoleon_attr_annotations = True

autoclass_content = "both"  # include both class docstring and __init__
autodoc_default_options = {
    "members": True,
    "show-inheritance": True,
}
autosummary_generate = True
autosummary_imported_members = False

master_doc = "index"
exclude_patterns = ["_build"]


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
