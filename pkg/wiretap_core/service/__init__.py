"""
Service helpers: annotated types, table names, constants, exceptions
and provenance
"""
