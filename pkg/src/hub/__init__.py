"""The recursive stochastic-stability algorithm"""
