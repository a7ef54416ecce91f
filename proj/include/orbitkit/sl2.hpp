#pragma once

#include <string>
#include <vector>

#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Supported ambient matrix algebras: traceless n×n, or the symplectic
/// algebra of 2n×2n matrices Z with ᵗZJ + JZ = 0.
enum class AmbientKind { SL, SP };

std::string to_string(AmbientKind kind);
AmbientKind ambient_from_string(const std::string& s);

/// A triple (H, X, Y) with [H,X] = 2X, [H,Y] = −2Y, [X,Y] = H, held
/// exactly over complex rationals.  `n` is the rank parameter: SL means
/// n×n matrices, SP means 2n×2n.
struct Sl2Triple {
  AmbientKind ambient = AmbientKind::SL;
  int n = 2;
  Matrix<GaussianRational> H, X, Y;
};

/// Predicate results for the two distinguished triple positions relative
/// to the transpose involution θ(Z) = −ᵗZ (complex-linear extension).
struct TripleFlavor {
  bool is_cayley;  // θ(H) = −H, θ(X) = −Y, θ(Y) = −X
  bool is_normal;  // θ(H) = H,  θ(X) = −X, θ(Y) = −Y
};

/// Equivariance flags of the morphism sending the reference basis to
/// (H, X, Y): `real` under entrywise conjugation, `theta` under the
/// conjugate-transpose involution θ(Z) = −ᵗZ̄.
struct MorphismClass {
  bool real_equivariant;
  bool theta_equivariant;
};

/// Reference bases: H₀ = diag(1,−1), E₀/F₀ the upper/lower unit shears,
/// and the skew pair h₀ = [[0,i],[−i,0]], x₀ = ½[[1,−i],[−i,−1]],
/// y₀ = ½[[1,i],[i,−1]].
Sl2Triple standard_triple();
Sl2Triple normal_triple();

/// Validates membership in the ambient algebra and the three bracket
/// relations exactly; error messages name the failed relation.
Sl2Triple make_sl2_triple(AmbientKind ambient, int n,
                          Matrix<GaussianRational> H,
                          Matrix<GaussianRational> X,
                          Matrix<GaussianRational> Y);

TripleFlavor triple_flavor(const Sl2Triple& t);

MorphismClass morphism_class(const Sl2Triple& t);

/// (H, X, Y) ↦ (i(X−Y), ½(X+Y+iH), ½(X+Y−iH)); requires the input to
/// satisfy the Cayley predicate and returns a triple satisfying the
/// normal predicate.
Sl2Triple cayley_transform(const Sl2Triple& t);

/// Basis of the ambient algebra as real matrices (SL: off-diagonal units
/// and successive diagonal differences; SP: block basis with symmetric
/// off-diagonal blocks).
std::vector<Matrix<Rational>> ambient_basis(AmbientKind ambient, int n);

bool in_ambient(const Matrix<Rational>& z, AmbientKind ambient);
bool in_ambient(const Matrix<GaussianRational>& z, AmbientKind ambient);

/// Completes a nonzero nilpotent E to a triple (H, E, Y): first the
/// neutral element from the minimum-norm solution of [[E,W],E] = 2E with
/// H = [E,W], then Y from the joint system [E,Y] = H, [H,Y] = −2Y.
/// All linear algebra is exact; the three relations are re-verified.
Sl2Triple jacobson_morozov(const Matrix<Rational>& e, AmbientKind ambient);

/// x = ½(H − i(X+Y)), the nilpotent partner of X under the triple-level
/// correspondence between real and (−1)-eigenspace nilpotents.
Matrix<GaussianRational> sekiguchi_image(const Sl2Triple& t);

/// h = i(X−Y); satisfies [h, sekiguchi_image] = 2·sekiguchi_image.
Matrix<GaussianRational> sekiguchi_neutral(const Sl2Triple& t);

/// True when m is annihilated by Π_{k=−bound..bound} (m − k·I): the
/// matrix is diagonalizable with integer eigenvalues in that range.
bool has_integer_spectrum(const Matrix<GaussianRational>& m, int bound);

}  // namespace orbitkit
