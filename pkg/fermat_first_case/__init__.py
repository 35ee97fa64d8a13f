# fermat_first_case/__init__.py
__version__ = "0.1.0"
