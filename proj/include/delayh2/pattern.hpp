#pragma once

#include <string>
#include <vector>

#include "delayh2/statespace.hpp"

namespace delayh2 {

/// Player channel sizes along one side of the controller (inputs or outputs).
class BlockPartition {
 public:
  BlockPartition() = default;
  explicit BlockPartition(std::vector<int> sizes);

  static BlockPartition units(int count) {
    return BlockPartition(std::vector<int>(static_cast<size_t>(count), 1));
  }

  int count() const { return static_cast<int>(sizes_.size()); }
  int total() const { return total_; }
  int size(int block) const { return sizes_.at(static_cast<size_t>(block)); }
  int offset(int block) const { return offsets_.at(static_cast<size_t>(block)); }
  const std::vector<int>& sizes() const { return sizes_; }

  bool operator==(const BlockPartition&) const = default;

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// 0/1 matrix over (control block, measurement block).
class BlockMask {
 public:
  BlockMask() = default;
  BlockMask(int rows, int cols, bool value = false)
      : rows_(rows), cols_(cols), bits_(static_cast<size_t>(rows * cols), value) {}

  static BlockMask from_rows(const std::vector<std::vector<int>>& rows);
  static BlockMask identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool operator()(int r, int c) const { return bits_[index(r, c)]; }
  void set(int r, int c, bool v) { bits_[index(r, c)] = v; }
  bool any() const;

  // Entrywise a <= b.
  bool subset_of(const BlockMask& other) const;

  bool operator==(const BlockMask&) const = default;

 private:
  size_t index(int r, int c) const { return static_cast<size_t>(r * cols_ + c); }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<bool> bits_;
};

/// The admissible set S = Y + z^{-(N+1)} R_p: at each lag 1..N only the blocks
/// enabled by masks[lag-1] may be nonzero; lags beyond N are unconstrained.
class InformationPattern {
 public:
  InformationPattern(int horizon, BlockPartition u_blocks, BlockPartition y_blocks,
                     std::vector<BlockMask> masks);

  int horizon() const { return horizon_; }
  const BlockPartition& u_blocks() const { return u_blocks_; }
  const BlockPartition& y_blocks() const { return y_blocks_; }
  const std::vector<BlockMask>& masks() const { return masks_; }
  const BlockMask& mask(int lag) const { return masks_.at(static_cast<size_t>(lag - 1)); }

  // Whether scalar entry (row, col) of the lag coefficient may be nonzero.
  bool allows(int lag, int row, int col) const;

  // Expanded p2 x q2 0/1 matrix for one lag; all ones beyond the horizon.
  Matrix entry_mask(int lag) const;

  // Number of free scalar entries across lags 1..N.
  int free_entries() const;

  bool operator==(const InformationPattern&) const = default;

 private:
  int block_of(const BlockPartition& part, int index) const;

  int horizon_;
  BlockPartition u_blocks_;
  BlockPartition y_blocks_;
  std::vector<BlockMask> masks_;
};

// Block-diagonal masks at every lag.
InformationPattern n_step_pattern(const BlockPartition& u, const BlockPartition& y, int n);

// Three-player chain: N = 2, diagonal at lag 1, tridiagonal at lag 2.
InformationPattern chain_pattern(const BlockPartition& u, const BlockPartition& y);

// Block (a, b) becomes available at lag delays[a][b]; all delays must lie in
// [1, N+1].
InformationPattern from_delay_matrix(const std::vector<std::vector<int>>& delays,
                                     const BlockPartition& u, const BlockPartition& y,
                                     int n);

// Smallest lag at which each block is allowed (N+1 if never within the horizon).
std::vector<std::vector<int>> delay_matrix(const InformationPattern& pattern);

// Every mask zero: S = z^{-(N+1)} R_p.
InformationPattern pure_delay_pattern(const BlockPartition& u, const BlockPartition& y,
                                      int n);

// Every mask full: S = (1/z) R_p.
InformationPattern full_pattern(const BlockPartition& u, const BlockPartition& y, int n);

// Same mask at every lag 1..N; used by the sweep families.
InformationPattern constant_pattern(const BlockMask& mask, const BlockPartition& u,
                                    const BlockPartition& y, int n);

// Named families: "tri" (block lower triangular), "di" (block diagonal),
// "low" (last diagonal block only), "pure-delay", "full", "n-step".
InformationPattern family_pattern(const std::string& family, const BlockPartition& u,
                                  const BlockPartition& y, int n);

// Zeroes every coefficient entry the pattern disallows.
FirTransfer project_fir(const FirTransfer& f, const InformationPattern& pattern);

// Conservative block-delay test for K P22 K in S. plant_delay[b][a] is the first
// lag at which measurement block b responds to control block a; any value
// beyond the horizon means "no coupling within the horizon".
bool is_quadratically_invariant(const InformationPattern& pattern,
                                const std::vector<std::vector<int>>& plant_delay);

// First nonzero Markov lag of each (measurement block, control block) pair of
// a strictly proper P22, searched up to max_lag (max_lag + 1 if none found).
std::vector<std::vector<int>> plant_block_delays(const StateSpace& p22,
                                                 const BlockPartition& u,
                                                 const BlockPartition& y, int max_lag,
                                                 double zero_tol = 1e-12);

}  // namespace delayh2
