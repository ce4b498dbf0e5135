#pragma once
#include "hageo/heuristic/candidates.hpp"
#include "hageo/util/rng.hpp"

namespace hageo::heuristic {

struct AuxRound {
    Category category;
    std::vector<glang::Statement> construction;
    std::string witnesses;
};

struct AuxAttempt {
    uint64_t rng_seed = 0;
    std::vector<AuxRound> rounds;
    glang::ConstructionPlan extended;   // base plan plus every round
};

struct AttemptConfig {
    int rounds = 6;            // N
    HeuristicConfig heur;
};

struct AttemptDegenerate : std::runtime_error {
    explicit AttemptDegenerate(const std::string& m) : std::runtime_error(m) {}
};

// one auxiliary attempt: N rounds, each drawing a candidate (or a random
// construction) on the diagram extended so far; deterministic per seed
AuxAttempt sample_attempt(const glang::ConstructionPlan& base, uint64_t seed,
                          const AttemptConfig& cfg);

// alpha-equivalence key of an attempt's construction multiset
std::string attempt_key(const AuxAttempt& a);

// drops attempts whose canonicalized construction multiset repeats an earlier one
std::vector<AuxAttempt> dedup_attempts(std::vector<AuxAttempt> attempts);

std::string render_statement(const glang::Statement& st);

} // namespace hageo::heuristic
