#pragma once
#include "hageo/ar/linear.hpp"

namespace hageo::ar {

struct InconsistentSystem : std::runtime_error {
    explicit InconsistentSystem(const std::string& m) : std::runtime_error(m) {}
};

// reduced row echelon form with per-row combinations of the input rows.
// Variable columns are eliminated left to right; the constant column is never
// a pivot (a row supported only on it signals contradictory input facts).
struct ReducedBasis {
    struct RRow {
        Vec coeffs;                         // lead coefficient normalized to 1
        uint32_t lead = 0;
        std::map<uint32_t, Rat> lambda;     // combination of input rows
    };
    std::vector<RRow> rows;
    std::map<uint32_t, uint32_t> lead_row;  // lead column -> row index
    uint32_t nvars = 0;
    uint32_t rank = 0;

    // expression of a vector over the free columns; lambda gives the input
    // rows used. The residual of an in-span vector is empty (or constant-only).
    struct Expr {
        Vec residual;
        std::map<uint32_t, Rat> lambda;
    };
    Expr express(Vec v) const;

    bool is_pivot(uint32_t col) const { return lead_row.count(col) != 0; }
    std::vector<uint32_t> free_columns() const;   // the independent variable set
};

ReducedBasis reduce(const LinearSystem& sys);

} // namespace hageo::ar
