# tests/__init__.py

# Unit test package initialization.
