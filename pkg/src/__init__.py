# ellipuc: elliptic orthogonal polynomials on the unit circle
