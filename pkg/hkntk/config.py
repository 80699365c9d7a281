# Global configure

PROGRAM = "hkntk"
VERSION = "0.1.0"
DEBUG = 0

# defaults shared by the commands
DEF_SEED = 0
DEF_HORIZON = 10 ** 7
DEF_RUNS_ORIENTED = 200
DEF_RUNS_NEUTRAL = 50
DEF_NPROC = 1
DEF_OUT_DIR = "."
