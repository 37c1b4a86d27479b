#pragma once

#include <vector>

#include "slmc/core/morphism.hpp"

namespace slmc::fixtures {

/// u (0,1), w (1,1), v (0,2); every operation zero; N = 3.
SLAlgebra abelian();
/// x, y (deg 0, wt 1), z (deg 1, wt 2), {x,y} = z; N = 3.
SLAlgebra a2();
/// a (0,1), b (1,2), {a,a} = b; N = 3.
SLAlgebra square();
/// e (0,1), h (-1,1), dh = e; N = 2.
SLAlgebra contractible();
/// u, v (deg -1, wt 1), c (deg -1, wt 2), {u,v} = c; N = 3. Its bracket
/// pairs two odd vectors, so odd forms must pass odd vectors in L (x) Omega_n.
SLAlgebra odd();
/// a2 plus w (2,3) and {x,z} = w; N = 4. Fails the ternary relation on x.x.y.
SLAlgebra mutant();
/// A dg Lie algebra with nonzero differential and brackets (N = 4).
SLAlgebra rich();
/// rich() transported along a non-strict coalgebra automorphism; it carries
/// a nonzero ternary bracket.
SLAlgebra transported();
/// k1 (0,1), k2 (0,2), k3 (-1,1), k4 (-1,2); all operations zero; N = 3.
SLAlgebra kernel();
/// a2() (+) kernel().
SLAlgebra a2_plus_kernel();

/// The transport pair: phi : transported -> rich and psi : rich -> transported,
/// mutually inverse infinity-isomorphisms with identity linear part.
InftyMorphism transport_phi();
InftyMorphism transport_psi();

/// Inverse of a coalgebra automorphism with identity linear part, as a map
/// between the given algebras (only the Taylor table is computed here).
TaylorTable inverse_taylor(const InftyMorphism& f);

/// Every algebra expected to satisfy the relations, including direct sums.
std::vector<SLAlgebra> valid_algebras();

}  // namespace slmc::fixtures
