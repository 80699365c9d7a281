from ..config import PROGRAM

APP = PROGRAM
MODULE = "estimate"
