#pragma once

#include "framelab/types.hpp"

namespace framelab {

/// Imaginary residue above this in a real-kind generator is an internal
/// consistency failure; at or below it, residues are truncated to zero.
inline constexpr double kRealnessTol = 1e-12;

/// n x n inverse-DFT style Vandermonde matrix with unit-modulus entries:
/// entry (m, p) = exp(2*pi*i*m*p/n) / sqrt(n). Unitary for every n.
ComplexMatrix dft_matrix(int n);

/// n x k frequency selector: an identity block of size alpha in the top-left
/// corner and one of size beta = k - alpha in the bottom-right corner.
ComplexMatrix spectral_selector(const FrameSpec& spec);

/// Generator matrix of the (n, k) code. Real kind:
/// sqrt(n/k) * W_n^H * Sigma * W_k, with imaginary residue truncated;
/// complex kind drops the trailing W_k. Rows form a unit-norm tight frame:
/// G^H G = (n/k) I_k.
ComplexMatrix generator(const FrameSpec& spec);

/// Rows of g at the data positions of the pattern, order preserved.
ComplexMatrix subframe(const ComplexMatrix& g, const PatternMask& pattern);

/// Systematic generator G * G_k^{-1}: its rows at the pattern's data
/// positions form the identity, so data samples appear verbatim in the
/// codeword. Requires exactly g.cols() data positions.
ComplexMatrix systematic_generator(const ComplexMatrix& g, const PatternMask& pattern);

/// min(|q - p|, n - |q - p|) for 1-based row indices p, q.
int circular_distance(int p, int q, int n);

/// Closed form of entry (r, s) of G G^H (0-based): a sum of unit-modulus
/// terms over the retained frequency bins, depending on r - s only.
Complex generator_gram_entry(const FrameSpec& spec, int r, int s);

}  // namespace framelab
