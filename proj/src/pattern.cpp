#include "delayh2/pattern.hpp"

#include <algorithm>
#include <sstream>

namespace delayh2 {

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  require(!sizes_.empty(), ErrorCode::kInvalidPattern, "block partition is empty");
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    require(s > 0, ErrorCode::kInvalidPattern, "block sizes must be positive");
    offsets_.push_back(total_);
    total_ += s;
  }
}

BlockMask BlockMask::from_rows(const std::vector<std::vector<int>>& rows) {
  require(!rows.empty() && !rows.front().empty(), ErrorCode::kInvalidPattern,
          "mask is empty");
  BlockMask m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    require(static_cast<int>(rows[r].size()) == m.cols(), ErrorCode::kInvalidPattern,
            "mask rows have different lengths");
    for (int c = 0; c < m.cols(); ++c) {
      const int v = rows[r][c];
      require(v == 0 || v == 1, ErrorCode::kInvalidPattern, "mask entries must be 0 or 1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

BlockMask BlockMask::identity(int n) {
  BlockMask m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BlockMask::any() const {
  return std::find(bits_.begin(), bits_.end(), true) != bits_.end();
}

bool BlockMask::subset_of(const BlockMask& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

InformationPattern::InformationPattern(int horizon, BlockPartition u_blocks,
                                       BlockPartition y_blocks,
                                       std::vector<BlockMask> masks)
    : horizon_(horizon),
      u_blocks_(std::move(u_blocks)),
      y_blocks_(std::move(y_blocks)),
      masks_(std::move(masks)) {
  require(horizon_ >= 1, ErrorCode::kInvalidPattern, "pattern horizon N must be >= 1");
  require(u_blocks_.count() > 0 && y_blocks_.count() > 0, ErrorCode::kInvalidPattern,
          "pattern partitions are empty");
  if (static_cast<int>(masks_.size()) != horizon_) {
    std::ostringstream os;
    os << "pattern has " << masks_.size() << " masks but N = " << horizon_;
    fail(ErrorCode::kInvalidPattern, os.str());
  }
  for (const BlockMask& m : masks_) {
    require(m.rows() == u_blocks_.count() && m.cols() == y_blocks_.count(),
            ErrorCode::kInvalidPattern, "mask shape does not match the block partitions");
  }
  for (size_t i = 1; i < masks_.size(); ++i) {
    if (!masks_[i - 1].subset_of(masks_[i])) {
      std::ostringstream os;
      os << "pattern masks are not monotone: lag " << i << " allows a block that lag "
         << i + 1 << " does not";
      fail(ErrorCode::kInvalidPattern, os.str());
    }
  }
}

int InformationPattern::block_of(const BlockPartition& part, int index) const {
  for (int b = part.count() - 1; b >= 0; --b) {
    if (index >= part.offset(b)) return b;
  }
  return 0;
}

bool InformationPattern::allows(int lag, int row, int col) const {
  if (lag > horizon_) return true;
  if (lag < 1) return false;
  return mask(lag)(block_of(u_blocks_, row), block_of(y_blocks_, col));
}

Matrix InformationPattern::entry_mask(int lag) const {
  Matrix m(u_blocks_.total(), y_blocks_.total());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m(r, c) = allows(lag, r, c) ? 1.0 : 0.0;
  }
  return m;
}

int InformationPattern::free_entries() const {
  int count = 0;
  for (int lag = 1; lag <= horizon_; ++lag) {
    const BlockMask& m = mask(lag);
    for (int a = 0; a < m.rows(); ++a) {
      for (int b = 0; b < m.cols(); ++b) {
        if (m(a, b)) count += u_blocks_.size(a) * y_blocks_.size(b);
      }
    }
  }
  return count;
}

namespace {

void require_same_count(const BlockPartition& u, const BlockPartition& y) {
  require(u.count() == y.count(), ErrorCode::kInvalidPattern,
          "control and measurement partitions must have the same number of players");
}

}  // namespace

InformationPattern constant_pattern(const BlockMask& mask, const BlockPartition& u,
                                    const BlockPartition& y, int n) {
  require(n >= 1, ErrorCode::kInvalidPattern, "pattern horizon N must be >= 1");
  return InformationPattern(n, u, y, std::vector<BlockMask>(static_cast<size_t>(n), mask));
}

InformationPattern n_step_pattern(const BlockPartition& u, const BlockPartition& y, int n) {
  require_same_count(u, y);
  return constant_pattern(BlockMask::identity(u.count()), u, y, n);
}

InformationPattern chain_pattern(const BlockPartition& u, const BlockPartition& y) {
  require(u.count() == 3 && y.count() == 3, ErrorCode::kInvalidPattern,
          "chain pattern needs exactly three players");
  return from_delay_matrix({{1, 2, 3}, {2, 1, 2}, {3, 2, 1}}, u, y, 2);
}

InformationPattern from_delay_matrix(const std::vector<std::vector<int>>& delays,
                                     const BlockPartition& u, const BlockPartition& y,
                                     int n) {
  require(n >= 1, ErrorCode::kInvalidPattern, "pattern horizon N must be >= 1");
  require(static_cast<int>(delays.size()) == u.count(), ErrorCode::kInvalidPattern,
          "delay matrix row count does not match the control partition");
  std::vector<BlockMask> masks(static_cast<size_t>(n), BlockMask(u.count(), y.count()));
  for (int a = 0; a < u.count(); ++a) {
    require(static_cast<int>(delays[a].size()) == y.count(), ErrorCode::kInvalidPattern,
            "delay matrix column count does not match the measurement partition");
    for (int b = 0; b < y.count(); ++b) {
      const int d = delays[a][b];
      require(d >= 1, ErrorCode::kInvalidPattern, "delays must be >= 1");
      if (d > n + 1) {
        std::ostringstream os;
        os << "delay " << d << " of block (" << a << "," << b
           << ") exceeds horizon N+1 = " << n + 1;
        fail(ErrorCode::kDelayExceedsHorizon, os.str());
      }
      for (int lag = d; lag <= n; ++lag) masks[static_cast<size_t>(lag - 1)].set(a, b, true);
    }
  }
  return InformationPattern(n, u, y, std::move(masks));
}

std::vector<std::vector<int>> delay_matrix(const InformationPattern& pattern) {
  const int n = pattern.horizon();
  std::vector<std::vector<int>> d(static_cast<size_t>(pattern.u_blocks().count()),
                                  std::vector<int>(static_cast<size_t>(pattern.y_blocks().count()), n + 1));
  for (int lag = n; lag >= 1; --lag) {
    const BlockMask& m = pattern.mask(lag);
    for (int a = 0; a < m.rows(); ++a) {
      for (int b = 0; b < m.cols(); ++b) {
        if (m(a, b)) d[a][b] = lag;
      }
    }
  }
  return d;
}

InformationPattern pure_delay_pattern(const BlockPartition& u, const BlockPartition& y,
                                      int n) {
  return constant_pattern(BlockMask(u.count(), y.count(), false), u, y, n);
}

InformationPattern full_pattern(const BlockPartition& u, const BlockPartition& y, int n) {
  return constant_pattern(BlockMask(u.count(), y.count(), true), u, y, n);
}

InformationPattern family_pattern(const std::string& family, const BlockPartition& u,
                                  const BlockPartition& y, int n) {
  if (family == "pure-delay") return pure_delay_pattern(u, y, n);
  if (family == "full") return full_pattern(u, y, n);
  if (family == "n-step" || family == "di") return n_step_pattern(u, y, n);
  require_same_count(u, y);
  const int k = u.count();
  BlockMask m(k, k);
  if (family == "tri") {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b <= a; ++b) m.set(a, b, true);
    }
  } else if (family == "low") {
    m.set(k - 1, k - 1, true);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown pattern family '" + family + "'");
  }
  return constant_pattern(m, u, y, n);
}

FirTransfer project_fir(const FirTransfer& f, const InformationPattern& pattern) {
  require(f.horizon() == pattern.horizon(), ErrorCode::kDimensionMismatch,
          "project_fir: FIR horizon differs from the pattern horizon");
  require(f.rows() == pattern.u_blocks().total() && f.cols() == pattern.y_blocks().total(),
          ErrorCode::kDimensionMismatch, "project_fir: FIR shape does not match the pattern");
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(f.horizon()));
  for (int lag = 1; lag <= f.horizon(); ++lag) {
    out.push_back(f.at(lag).cwiseProduct(pattern.entry_mask(lag)));
  }
  if (out.empty()) return FirTransfer::zero(0, f.rows(), f.cols());
  return FirTransfer(std::move(out));
}

bool is_quadratically_invariant(const InformationPattern& pattern,
                                const std::vector<std::vector<int>>& plant_delay) {
  const int n = pattern.horizon();
  const int nu = pattern.u_blocks().count();
  const int ny = pattern.y_blocks().count();
  require(static_cast<int>(plant_delay.size()) == ny, ErrorCode::kDimensionMismatch,
          "plant delay matrix must have one row per measurement block");
  for (const auto& row : plant_delay) {
    require(static_cast<int>(row.size()) == nu, ErrorCode::kDimensionMismatch,
            "plant delay matrix must have one column per control block");
    for (int d : row) {
      require(d >= 1, ErrorCode::kInvalidArgument, "plant delays must be >= 1");
    }
  }
  // K_{ab} at lag i, P22_{ba'} from lag d, K_{a'b'} at lag k contribute to
  // block (a, b') at every lag >= i + d + k.
  for (int i = 1; i <= n; ++i) {
    const BlockMask& mi = pattern.mask(i);
    for (int a = 0; a < nu; ++a) {
      for (int b = 0; b < ny; ++b) {
        if (!mi(a, b)) continue;
        for (int a2 = 0; a2 < nu; ++a2) {
          const int d = plant_delay[b][a2];
          for (int k = 1; i + d + k <= n; ++k) {
            const BlockMask& mk = pattern.mask(k);
            for (int b2 = 0; b2 < ny; ++b2) {
              if (!mk(a2, b2)) continue;
              for (int lag = i + d + k; lag <= n; ++lag) {
                if (!pattern.mask(lag)(a, b2)) return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<int>> plant_block_delays(const StateSpace& p22,
                                                 const BlockPartition& u,
                                                 const BlockPartition& y, int max_lag,
                                                 double zero_tol) {
  require(p22.inputs() == u.total() && p22.outputs() == y.total(),
          ErrorCode::kDimensionMismatch, "plant_block_delays: partition mismatch");
  const std::vector<Matrix> mk = markov(p22, max_lag + 1);
  std::vector<std::vector<int>> d(static_cast<size_t>(y.count()),
                                  std::vector<int>(static_cast<size_t>(u.count()), max_lag + 1));
  for (int b = 0; b < y.count(); ++b) {
    for (int a = 0; a < u.count(); ++a) {
      for (int lag = 1; lag <= max_lag; ++lag) {
        const Matrix blk = mk[static_cast<size_t>(lag)].block(y.offset(b), u.offset(a),
                                                              y.size(b), u.size(a));
        if (blk.cwiseAbs().maxCoeff() > zero_tol) {
          d[b][a] = lag;
          break;
        }
      }
    }
  }
  return d;
}

}  // namespace delayh2
