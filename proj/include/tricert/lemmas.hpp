#pragma once

#include "tricert/manifolds.hpp"

namespace tricert {

struct LemmaOptions {
    uint64_t seed = 7;
    std::int64_t cases = 10000;  // per lemma (per manifold for manifold-based sweeps)
    std::vector<std::string> manifold_specs = {"sphere:2,3,1", "torus:2,1", "circle:1"};
};

struct LemmaResult {
    std::string name;
    std::int64_t cases = 0;       // checks actually performed
    std::int64_t violations = 0;
    double worst_margin = 0;      // min over checks of rhs - lhs (slack)
    double worst_lhs = 0, worst_rhs = 0;
    bool pass = false;
    double seconds = 0;
};

/// Registry of randomized sweeps, one per quantitative bound.
std::vector<std::string> lemma_names();

LemmaResult run_lemma(const std::string& name, const LemmaOptions& opts);
std::vector<LemmaResult> run_all_lemmas(const LemmaOptions& opts);

}  // namespace tricert
