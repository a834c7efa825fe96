#pragma once

#include <cstdint>
#include <random>

#include "ckd/fock.hpp"
#include "ckd/linalg.hpp"
#include "ckd/tuples.hpp"

namespace ckd {

/// Seeded generator for reproducible test instances.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    int uniform_int(int lo, int hi); // inclusive
    cd gauss();
    Mat gaussian(Eigen::Index rows, Eigen::Index cols);
    /// Haar-like unitary from the QR of a complex Gaussian matrix.
    Mat unitary(Eigen::Index d);

private:
    std::mt19937_64 eng_;
};

/// Compression of the creation tuple ops (on C^ops_dim) to the smallest
/// co-invariant subspace containing a few random vectors supported on basis
/// indices below `support`.  Retries until the dimension lies in [min_dim, max_dim].
/// The result is conjugated by a random unitary when `rotate` is set.
OperatorTuple random_compression(const std::vector<Mat>& ops, int support, int min_dim,
                                 int max_dim, Rng& rng, bool rotate = true);

/// Random co-invariant compression of the truncated A-Fock creation tuple.
OperatorTuple random_fock_compression(const TruncatedFock& f, int min_dim, int max_dim, Rng& rng,
                                      bool rotate = true);

/// Random commuting tuple satisfying A-relations: a compression of the W-tuple.
OperatorTuple random_commuting_tuple(const TransitionMatrix& a, int N, int min_dim, int max_dim,
                                     Rng& rng);

/// Random point of the variety M of A, supported on a random admissible support.
Vec random_variety_point(const TransitionMatrix& a, Rng& rng);

/// Unitarily rotated direct sum of `copies` variety points (diagonal, normal,
/// unital, satisfies A-relations).
OperatorTuple random_spherical_tuple(const TransitionMatrix& a, int copies, Rng& rng);

} // namespace ckd
