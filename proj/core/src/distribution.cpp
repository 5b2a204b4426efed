#include "trustnet/distribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace trustnet {

GameDistribution GameDistribution::exponential(double mean, std::size_t rows, std::size_t cols) {
  GameDistribution d;
  d.rows = rows;
  d.cols = cols;
  d.law = EntryLaw::exponential;
  d.mean = mean;
  d.validate();
  return d;
}

GameDistribution GameDistribution::uniform(double lo, double hi, std::size_t rows,
                                           std::size_t cols) {
  GameDistribution d;
  d.rows = rows;
  d.cols = cols;
  d.law = EntryLaw::uniform;
  d.lo = lo;
  d.hi = hi;
  d.validate();
  return d;
}

void GameDistribution::validate() const {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("game distribution shape must be at least 1x1");
  }
  switch (law) {
    case EntryLaw::exponential:
      if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("exponential mean must be positive and finite");
      }
      break;
    case EntryLaw::uniform:
      if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw std::invalid_argument("uniform bounds must be finite with lo <= hi");
      }
      break;
  }
}

double GameDistribution::support_min() const {
  return law == EntryLaw::exponential ? 0.0 : lo;
}

double GameDistribution::draw_entry(Rng& rng) const {
  if (law == EntryLaw::exponential) {
    return rng.exponential(mean);
  }
  return lo == hi ? lo : rng.uniform(lo, hi);
}

BimatrixGame GameDistribution::draw(Rng& rng) const {
  BimatrixGame game(rows, cols);
  draw_into(game, rng);
  return game;
}

void GameDistribution::draw_into(BimatrixGame& game, Rng& rng) const {
  if (game.rows() != rows || game.cols() != cols) {
    game = BimatrixGame(rows, cols);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      game.leader(r, c) = draw_entry(rng);
      game.follower(r, c) = draw_entry(rng);
    }
  }
}

std::string GameDistribution::describe() const {
  std::ostringstream out;
  out << rows << 'x' << cols << ' ';
  if (law == EntryLaw::exponential) {
    out << "exponential(mean=" << mean << ')';
  } else {
    out << "uniform[" << lo << ',' << hi << ']';
  }
  return out.str();
}

}  // namespace trustnet
