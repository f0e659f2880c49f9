# updates/__init__.py
