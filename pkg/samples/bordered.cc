# three faces, one boundary circle (tetrahedron minus a face, unfolded)
face A : a b c
face B : b e d'
face C : a d f'
