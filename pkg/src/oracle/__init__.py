"""Independent reference computations used to cross-check hub"""
