#include "trustnet/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trustnet {

TrustLevel::TrustLevel(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0) {
    throw std::invalid_argument("trust level must be non-negative, got " + std::to_string(value));
  }
}

BimatrixGame::BimatrixGame(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), leader_(rows * cols, 0.0), follower_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("game must have at least one row and one column");
  }
}

BimatrixGame::BimatrixGame(std::size_t rows, std::size_t cols, std::vector<double> leader,
                           std::vector<double> follower)
    : rows_(rows), cols_(cols), leader_(std::move(leader)), follower_(std::move(follower)) {
  if (leader_.size() != rows * cols || follower_.size() != rows * cols) {
    throw std::invalid_argument("payoff matrices do not match the game shape");
  }
  validate();
}

BimatrixGame BimatrixGame::from_cells(
    std::initializer_list<std::initializer_list<std::pair<double, double>>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  std::vector<double> a;
  std::vector<double> b;
  a.reserve(m * n);
  b.reserve(m * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("ragged payoff rows");
    }
    for (const auto& [leader, follower] : row) {
      a.push_back(leader);
      b.push_back(follower);
    }
  }
  return BimatrixGame(m, n, std::move(a), std::move(b));
}

void BimatrixGame::validate() const {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("game must have at least one row and one column");
  }
  for (std::size_t i = 0; i < leader_.size(); ++i) {
    if (!std::isfinite(leader_[i]) || !std::isfinite(follower_[i])) {
      throw std::invalid_argument("payoff entries must be finite");
    }
  }
}

namespace {

void check_row(const BimatrixGame& game, std::size_t row) {
  if (row >= game.rows()) {
    throw std::out_of_range("leader strategy " + std::to_string(row) + " out of range");
  }
}

// Greedy column value and the limited-trust column for one row, no bounds check.
std::size_t follower_response_unchecked(const BimatrixGame& game, std::size_t row, double trust) {
  double best_own = game.follower(row, 0);
  for (std::size_t c = 1; c < game.cols(); ++c) {
    best_own = std::max(best_own, game.follower(row, c));
  }
  std::size_t choice = 0;
  bool found = false;
  double choice_net = 0.0;
  double choice_own = 0.0;
  for (std::size_t c = 0; c < game.cols(); ++c) {
    const double own = game.follower(row, c);
    if (best_own - own > trust) {
      continue;
    }
    const double net = game.leader(row, c) + own;
    if (!found || net > choice_net || (net == choice_net && own > choice_own)) {
      choice = c;
      choice_net = net;
      choice_own = own;
      found = true;
    }
  }
  return choice;
}

std::size_t leader_row_unchecked(const BimatrixGame& game, double leader_trust,
                                 double anticipated_trust) {
  const std::size_t m = game.rows();
  double greedy_value = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double value = game.leader(r, follower_response_unchecked(game, r, anticipated_trust));
    if (r == 0 || value > greedy_value) {
      greedy_value = value;
    }
  }
  std::size_t choice = 0;
  bool found = false;
  double choice_net = 0.0;
  double choice_own = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t c = follower_response_unchecked(game, r, anticipated_trust);
    const double own = game.leader(r, c);
    if (greedy_value - own > leader_trust) {
      continue;
    }
    const double net = own + game.follower(r, c);
    if (!found || net > choice_net || (net == choice_net && own > choice_own)) {
      choice = r;
      choice_net = net;
      choice_own = own;
      found = true;
    }
  }
  return choice;
}

}  // namespace

std::size_t greedy_follower_response(const BimatrixGame& game, std::size_t leader_strategy) {
  check_row(game, leader_strategy);
  std::size_t best = 0;
  for (std::size_t c = 1; c < game.cols(); ++c) {
    if (game.follower(leader_strategy, c) > game.follower(leader_strategy, best)) {
      best = c;
    }
  }
  return best;
}

std::size_t follower_ltse_response(const BimatrixGame& game, std::size_t leader_strategy,
                                   TrustLevel trust) {
  check_row(game, leader_strategy);
  return follower_response_unchecked(game, leader_strategy, trust.value());
}

LtseOutcome leader_ltse_strategy(const BimatrixGame& game, TrustLevel leader, TrustLevel follower) {
  return play_ltse(game, leader, follower, follower);
}

LtseOutcome play_ltse(const BimatrixGame& game, TrustLevel leader, TrustLevel anticipated_follower,
                      TrustLevel actual_follower) {
  const std::size_t row = leader_row_unchecked(game, leader.value(), anticipated_follower.value());
  const std::size_t col = follower_response_unchecked(game, row, actual_follower.value());
  return LtseOutcome{row, col, game.leader(row, col), game.follower(row, col)};
}

}  // namespace trustnet
