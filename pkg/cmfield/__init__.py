''' Exact conservative matrix fields, polynomial continued fractions and irrationality certificates '''
__version__ = "0.1.0"
