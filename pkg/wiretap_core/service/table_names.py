"""
Contains names of DB tables
"""

T_NAME_CHANNELS = "channels"
"""`str` : `__tablename__` value for `BaseChannelRecord` table"""

T_NAME_RUNS = "runs"
"""`str` : `__tablename__` value for `BaseRun` table"""

T_NAME_VERTICES = "vertices"
"""`str` : `__tablename__` value for `BaseVertex` table"""

T_NAME_SIMULATIONS = "simulations"
"""`str` : `__tablename__` value for `BaseSimRecord` table"""
