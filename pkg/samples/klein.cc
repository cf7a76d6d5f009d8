surface klein
face A : a b a b'
