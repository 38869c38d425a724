"""
Resolution by subtyping
=======================

A merge packs several values into one. Annotating it with a type that none
of the parts has on its own makes the checker build the value from the
parts, much like an implicit or type-class instance would be found.
"""

from limp import alg_subtype, elaborate, parse_expr, parse_type
from limp.syntax import pretty_print
from limp.target import eval_term, normalize, show_value

# %%
# An integer next to a function from integers to booleans. Asking for a
# Bool applies the second to the first.
source = r"(1 ,, ((\x . true) : Int -> Bool)) : Bool"
ty, term = elaborate(parse_expr(source))
print("type:       ", pretty_print(ty))
print("coercion:   ", pretty_print(normalize(alg_subtype(parse_type("Int & (Int -> Bool)"), ty).term)))
print("value:      ", show_value(eval_term(term)))

# %%
# The same trick through a function argument: the environment is an
# ordinary value, passed around and queried by annotation.
source = (
    r"((\f . f (3 ,, ((\x . false) : Int -> Bool))) : ((Int & (Int -> Bool)) -> Bool) -> Bool)"
    r" ((\env . env : Bool) : (Int & (Int -> Bool)) -> Bool)"
)
ty, term = elaborate(parse_expr(source))
print(show_value(eval_term(term)), ":", pretty_print(ty))

# %%
# Curried functions are fed one argument at a time.
source = r"(2 ,, ((\x . \y . true) : Int -> Int -> Bool)) : Bool"
ty, term = elaborate(parse_expr(source))
print("curried:", show_value(eval_term(term)))
