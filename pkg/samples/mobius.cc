# rectangle with one twisted identification
surface mobius
face A : a b a c
