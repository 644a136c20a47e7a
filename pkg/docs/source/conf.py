from sphinx.domains.python import PythonDomain

project = "ffhyper"
copyright = "2024, ffhyper developers"  # noqa: A001
author = "ffhyper developers"
release = "1.0"

extensions = [
    "sphinx.ext.intersphinx",
    "sphinx_copybutton",
    "myst_parser",
    "autodoc2",
]
# signatures reference Fraction, numpy arrays and sympy polynomials
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "sympy": ("https://docs.sympy.org/latest/", None),
}
# type aliases such as `Value` are documented as data
PythonDomain.object_types["data"].roles = ("data", "class", "obj")

html_theme = "sphinx_rtd_theme"

# the public API is everything `ffhyper.__all__` re-exports
autodoc2_packages = [{"path": "../../src/ffhyper"}]
autodoc2_skip_module_regexes = [r"ffhyper\..*"]
autodoc2_module_all_regexes = [r"ffhyper"]
autodoc2_docstring_parser_regexes = [(r".*", "myst")]
autodoc2_hidden_objects = ["undoc", "dunder", "private", "inherited"]
autodoc2_render_plugin = "myst"
autodoc2_sort_names = True
autodoc2_index_template = None
