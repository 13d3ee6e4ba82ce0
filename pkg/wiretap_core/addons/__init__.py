"""
Addons for the ledger models: selectors, SQL filters, text export and
the run writers
"""
