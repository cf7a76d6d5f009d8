# square with opposite sides identified
surface torus
face A : a b a' b'
