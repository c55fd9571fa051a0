"""Stack-machine opcodes and status codes shared by both kernel backends.

Keep in sync with the enums at the top of ``_vm_c.pyx``.
"""

CONST = 0
VAR = 1
NEG = 2
ADD = 3
SUB = 4
MUL = 5
DIV = 6
POW = 7
ABS = 8
SIN = 9
COS = 10
EXP = 11
LN = 12
SQRT = 13
MOD = 14
EQ = 15
NE = 16
LT = 17
LE = 18
GT = 19
GE = 20
JUMP_IF_FALSE = 21
JUMP = 22

OK = 0
DIV_ZERO = 1
LN_DOMAIN = 2
SQRT_DOMAIN = 3
MOD_ZERO = 4
POW_DOMAIN = 5
NONFINITE = 6

STATUS_MESSAGES = {
    DIV_ZERO: "division by zero",
    LN_DOMAIN: "ln of a non-positive number",
    SQRT_DOMAIN: "sqrt of a negative number",
    MOD_ZERO: "mod with zero modulus",
    POW_DOMAIN: "power outside the real domain",
    NONFINITE: "result is not finite",
}
