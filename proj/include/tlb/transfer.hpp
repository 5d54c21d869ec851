#pragma once

#include <vector>

#include "tlb/algebra.hpp"
#include "tlb/poly.hpp"
#include "tlb/states.hpp"

namespace tlb {

// One row of transfer-matrix factors in application order. The boundary
// factors are applied after the bulk products acting on their site, so the
// lambda = 0 state spaces are invariant; on the annulus this is the same
// cyclic word as the textbook ordering.
struct Factor {
    Generator g;
    bool with_identity; // (I + g) when true, bare g otherwise
};
std::vector<Factor> row_factors(int N, const BoundaryMode& mode);

struct TransferMatrix {
    int N = 0;
    BoundaryMode mode;
    std::vector<ReducedState> basis; // canonical order
    // cols[j] holds (i, w) pairs: T |basis_j> = sum_i w |basis_i>.
    std::vector<std::vector<std::pair<int, Polynomial>>> cols;

    int index_of(const ReducedState& s) const;
};

TransferMatrix build_transfer(int N, const BoundaryMode& mode);

// True when every entry lies on or below the diagonal blocks of the
// canonical sector ordering.
bool is_block_lower_triangular(const TransferMatrix& T);

struct SectorBlock {
    SectorLabel label;
    std::vector<ReducedState> basis;
    std::vector<std::vector<Polynomial>> m; // dense, row-major
};

// Throws std::invalid_argument when the sector is empty.
SectorBlock sector_block(const TransferMatrix& T, const SectorLabel& sector);

// Character K = Tr(block^M), exact.
Polynomial character(const SectorBlock& block, int M);

// Annulus partition function of width N and M rows, via evolution of
// decorated slab states and a winding-resolved regluing.
Polynomial partition_function(int N, int M, const BoundaryMode& mode);

// Independent oracle: enumerate every vertex-split configuration of the
// N x M lattice and trace its loops on the annulus explicitly.
Polynomial oracle_partition(int N, int M, const BoundaryMode& mode);

// Terms of Z whose non-contractible content is exactly L lines with the
// given outermost blob statuses (Blob::None outside 2b/1b).
Polynomial constrained_partition(const Polynomial& Z, int L, Blob left, Blob right);

} // namespace tlb
