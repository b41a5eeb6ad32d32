#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alkspec/spectrum.hpp"
#include "alkspec/young.hpp"

namespace alkspec {

struct EydEntry {
    YoungDiagram lambda;
    double prob = 0.0;
};

/// Outcome distribution of the empirical-Young-diagram measurement on n
/// copies of a d-dimensional state; one entry per diagram of
/// enumerate_diagrams(n, d), in that order.
struct EydDistribution {
    int n = 0;
    int d = 0;
    std::vector<EydEntry> entries;

    double total() const;
    /// Entry with the largest probability (first one on ties).
    const EydEntry& mode() const;
};

/// Precomputed p-independent structure of Pr(lambda | n, p): log irrep
/// dimensions and the nonzero Kostka numbers for every sorted content
/// vector. Building is the expensive step; evaluation for a new spectrum only
/// touches doubles. Immutable after construction, so concurrent evaluation is
/// safe.
class EydModel {
public:
    EydModel(int n, int d);
    /// Restrict to a subset of enumerate_diagrams(n, d), kept in enumeration
    /// order. Used by truncated evaluation to skip negligible diagrams.
    EydModel(int n, int d, std::vector<YoungDiagram> subset);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<YoungDiagram>& diagrams() const { return diagrams_; }

    /// log Pr(diagrams()[index] | n, p).
    double log_probability(std::size_t index, const Spectrum& p) const;
    double probability(std::size_t index, const Spectrum& p) const;
    /// Index of lambda in diagrams(); throws if lambda is not a partition of n
    /// with at most d rows.
    std::size_t index_of(const YoungDiagram& lambda) const;

    EydDistribution distribution(const Spectrum& p) const;

private:
    struct ContentTerm {
        double log_kostka;
        // Every distinct ordering of one sorted content vector; the Kostka
        // number is shared because it only depends on the multiset.
        std::vector<std::vector<int>> orderings;
    };
    struct DiagramTerms {
        double log_dimension;
        std::vector<ContentTerm> terms;
    };

    int n_;
    int d_;
    std::vector<YoungDiagram> diagrams_;
    std::vector<DiagramTerms> table_;
};

/// log Pr(lambda | n, p) = log(|lambda| s_lambda(p)) for each diagram, with the
/// Schur polynomial expanded over Gelfand-Tsetlin patterns in floating point
/// (no Kostka tables). All diagrams must partition the same n.
std::vector<double> eyd_log_probabilities_schur(std::span<const YoungDiagram> diagrams, const Spectrum& p);

/// Pr(lambda | n, p) = |lambda| sum_m p^m K_{lambda,m}; lambda must be a
/// partition of n with at most p.dim() rows.
double eyd_probability(const YoungDiagram& lambda, int n, const Spectrum& p);

EydDistribution eyd_distribution(int n, const Spectrum& p);

/// Qubit closed form: probability of total spin S for n copies of a state
/// with spectrum (p, 1-p). S is integer or half-integer with n/2 - S a
/// non-negative integer.
double eyd_qubit(double S, int n, double p);

/// Inverse-CDF sampling over the fixed diagram order; deterministic in seed.
std::vector<YoungDiagram> sample_eyd(const EydDistribution& dist, std::size_t count, std::uint64_t seed);

/// Energy of the all-ground interaction U sum_{j<k}(1 - s_jk) on the lambda
/// subspace, in units of U.
double trap_energy(const YoungDiagram& lambda, int n);

}  // namespace alkspec
