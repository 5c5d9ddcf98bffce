#include <doctest.h>

#include <cmath>
#include <random>

#include "covchan/corpus.hpp"
#include "covchan/infotheory.hpp"

using namespace covchan;

namespace {

double joint_mi(const std::vector<std::vector<double>>& p) {
  Joint j;
  j.xs.resize(p.size());
  j.ys.resize(p[0].size());
  j.p = p;
  return mutual_information(j);
}

// Mutual information of a channel under a fixed input distribution,
// straight from the joint. Independent route used by the grid oracle.
double channel_mi(const std::vector<std::vector<double>>& w, const std::vector<double>& p) {
  std::vector<std::vector<double>> joint(p.size(), std::vector<double>(w[0].size()));
  for (size_t x = 0; x < p.size(); ++x) {
    for (size_t y = 0; y < w[x].size(); ++y) joint[x][y] = p[x] * w[x][y];
  }
  return joint_mi(joint);
}

std::vector<std::vector<double>> to_doubles(const Dmc& ch) {
  std::vector<std::vector<double>> w(ch.rows.size());
  for (size_t x = 0; x < ch.rows.size(); ++x) {
    for (const auto& entry : ch.rows[x]) w[x].push_back(to_double(entry));
  }
  return w;
}

// Brute-force capacity: fine sweep over every input pair (an optimum of a
// two-output channel needs at most two active inputs) plus a coarse sweep
// over the full simplex as a safety net.
double grid_capacity(const Dmc& ch, double fine_step, double coarse_step) {
  auto w = to_doubles(ch);
  const size_t n = ch.inputs.size();
  double best = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (double t = 0; t <= 1.0 + 1e-12; t += fine_step) {
        std::vector<double> p(n, 0.0);
        p[i] = t;
        p[j] = 1 - t;
        best = std::max(best, channel_mi(w, p));
      }
    }
  }
  if (n == 3) {
    for (double a = 0; a <= 1.0 + 1e-12; a += coarse_step) {
      for (double b = 0; a + b <= 1.0 + 1e-12; b += coarse_step) {
        best = std::max(best, channel_mi(w, {a, b, 1 - a - b}));
      }
    }
  }
  return best;
}

Dmc random_channel(std::mt19937& rng, size_t inputs, size_t outputs) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Dmc ch;
  for (size_t x = 0; x < inputs; ++x) ch.inputs.push_back("x" + std::to_string(x));
  for (size_t y = 0; y < outputs; ++y) ch.outputs.push_back("y" + std::to_string(y));
  for (size_t x = 0; x < inputs; ++x) {
    // Random rational rows over a common denominator, summing to one.
    std::vector<int> cuts{0, 1000};
    for (size_t y = 1; y < outputs; ++y) cuts.push_back(static_cast<int>(unit(rng) * 1000));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> row;
    for (size_t y = 0; y < outputs; ++y) {
      row.emplace_back(cuts[y + 1] - cuts[y], 1000);
    }
    ch.rows.push_back(std::move(row));
  }
  return ch;
}

}  // namespace

TEST_SUITE_BEGIN("infotheory");

TEST_CASE("entropy of the five-card deck") {
  Distribution deck{{"Ks", "As", "Ah", "Kh", "Qh"}, std::vector<double>(5, 0.2)};
  CHECK(validate_distribution(deck).empty());
  CHECK(entropy(deck) == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(entropy(deck) == doctest::Approx(2.3219280949).epsilon(1e-9));
}

TEST_CASE("entropy of a point mass is zero") {
  Distribution point{{"only"}, {1.0}};
  CHECK(entropy(point) == 0.0);
}

TEST_CASE("entropy of the color split") {
  Distribution color{{"spade", "heart"}, {0.4, 0.6}};
  double expected = -(0.4 * std::log2(0.4) + 0.6 * std::log2(0.6));
  CHECK(entropy(color) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(entropy(color) == doctest::Approx(0.9709505945).epsilon(1e-9));
}

TEST_CASE("mutual information basics") {
  SUBCASE("independent variables share nothing") {
    CHECK(joint_mi({{0.25, 0.25}, {0.25, 0.25}}) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("a copied fair bit shares one bit") {
    CHECK(joint_mi({{0.5, 0.0}, {0.0, 0.5}}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("value and color of the card deck") {
    // Rows King/Ace/Queen, columns spade/heart; five equally likely cards.
    double i = joint_mi({{0.2, 0.2}, {0.2, 0.2}, {0.0, 0.2}});
    double expected = 1.5219280949 + 0.9709505945 - 2.3219280949;
    CHECK(i == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("mutual information is symmetric and bounded on random joints") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    size_t nx = 2 + trial % 3, ny = 2 + (trial / 3) % 3;
    std::vector<std::vector<double>> p(nx, std::vector<double>(ny));
    double total = 0;
    for (auto& row : p) {
      for (auto& cell : row) {
        cell = unit(rng);
        total += cell;
      }
    }
    std::vector<double> px(nx, 0), py(ny, 0);
    std::vector<std::vector<double>> transposed(ny, std::vector<double>(nx));
    for (size_t x = 0; x < nx; ++x) {
      for (size_t y = 0; y < ny; ++y) {
        p[x][y] /= total;
        px[x] += p[x][y];
        py[y] += p[x][y];
        transposed[y][x] = p[x][y];
      }
    }
    double i = joint_mi(p);
    CHECK(i >= -1e-12);
    CHECK(i <= std::min(entropy_bits(px), entropy_bits(py)) + 1e-9);
    CHECK(i == doctest::Approx(joint_mi(transposed)).epsilon(1e-9));
  }
}

TEST_CASE("channel zoo capacities") {
  CHECK(dmc_capacity(corpus_channel("fig3-a")).capacity == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dmc_capacity(corpus_channel("fig3-b")).capacity == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(dmc_capacity(corpus_channel("fig3-c")).capacity == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("the three-input exclusion channel") {
  CapacityResult r = dmc_capacity(corpus_channel("fig6-c"));
  CHECK(r.converged);
  CHECK(r.capacity == doctest::Approx(std::log2(3.0) - 1.0).epsilon(1e-6));
  CHECK(r.capacity == doctest::Approx(0.58496).epsilon(1e-4));
}

TEST_CASE("deterministic injective channels reach log2 of the input count") {
  for (size_t k = 2; k <= 4; ++k) {
    Dmc ch;
    for (size_t x = 0; x < k; ++x) {
      ch.inputs.push_back("x" + std::to_string(x));
      ch.outputs.push_back("y" + std::to_string(x));
    }
    for (size_t x = 0; x < k; ++x) {
      std::vector<Rational> row(k, Rational(0));
      row[x] = Rational(1);
      ch.rows.push_back(std::move(row));
    }
    CHECK(dmc_capacity(ch).capacity == doctest::Approx(std::log2(double(k))).epsilon(1e-9));
  }
}

TEST_CASE("capacity lower bounds grow monotonically") {
  Dmc z{{"a", "b"}, {"0", "1"},
        {{Rational(1), Rational(0)}, {Rational(3, 10), Rational(7, 10)}}};
  CapacityResult r = dmc_capacity(z);
  REQUIRE(r.converged);
  for (size_t i = 1; i < r.lower_bounds.size(); ++i) {
    CHECK(r.lower_bounds[i] >= r.lower_bounds[i - 1] - 1e-12);
  }
  CHECK(r.capacity <= r.upper_bound + 1e-15);
}

TEST_CASE("capacity stays within algebraic bounds on random channels") {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    Dmc ch = random_channel(rng, 2 + trial % 3, 2 + (trial / 2) % 3);
    CapacityResult r = dmc_capacity(ch);
    CHECK(r.capacity >= -1e-12);
    CHECK(r.capacity <=
          std::log2(double(std::min(ch.inputs.size(), ch.outputs.size()))) + 1e-9);
  }
}

TEST_CASE("alternating maximization agrees with grid search") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    Dmc ch = random_channel(rng, trial % 2 ? 2 : 3, 2);
    double expected = grid_capacity(ch, 1e-4, 1e-2);
    CapacityResult r = dmc_capacity(ch);
    CAPTURE(trial);
    CHECK(r.capacity == doctest::Approx(expected).epsilon(1e-3));
  }
}

TEST_CASE("starved iteration budgets report bounds without converging") {
  Dmc noisy{{"a", "b"}, {"0", "1"},
            {{Rational(4, 5), Rational(1, 5)}, {Rational(3, 10), Rational(7, 10)}}};
  CapacityResult starved = dmc_capacity(noisy, 1e-12, 1);
  CHECK(!starved.converged);
  CHECK(starved.iterations == 1);
  CHECK(starved.capacity <= starved.upper_bound);
  CapacityResult full = dmc_capacity(noisy);
  CHECK(full.converged);
  CHECK(full.capacity >= starved.capacity - 1e-12);
}

TEST_CASE("degenerate channels are rejected") {
  Dmc empty;
  CHECK_THROWS_AS(dmc_capacity(empty), Error);
  Dmc bad{{"a"}, {"0", "1"}, {{Rational(1, 2), Rational(1, 4)}}};
  CHECK_THROWS_AS(dmc_capacity(bad), Error);
  Dmc fine = corpus_channel("fig3-a");
  CHECK_THROWS_AS(dmc_capacity(fine, 0.0), Error);
  CHECK_THROWS_AS(dmc_capacity(fine, 1e-9, 0), Error);
}

TEST_CASE("state-channel reduction reproduces the acknowledgement table") {
  // Two states: delivery (prob 1-p) with a perfect binary channel, loss
  // (prob p) with the single forced input.
  Rational p(1, 10);
  StateChannel k;
  k.states = {"S5", "S6"};
  k.state_probs = {Rational(1) - p, p};
  k.inputs = {{"!ack", "!nack"}, {"!nack"}};
  k.outputs = {"?ack", "?nack"};
  k.rows = {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
            {{Rational(0), Rational(1)}}};
  CHECK(validate_state_channel(k).empty());

  Dmc reduced = reduce_state_channel(k);
  REQUIRE(reduced.inputs.size() == 2);
  CHECK(reduced.inputs[0] == "(!ack,!nack)");
  CHECK(reduced.inputs[1] == "(!nack,!nack)");
  // "b" row: ?ack with probability 1-p, ?nack with probability p.
  CHECK(reduced.rows[0][0] == Rational(1) - p);
  CHECK(reduced.rows[0][1] == p);
  // "a" row: ?nack always.
  CHECK(reduced.rows[1][0] == Rational(0));
  CHECK(reduced.rows[1][1] == Rational(1));
}

TEST_CASE("single-state channels reduce to their own matrix") {
  StateChannel k;
  k.states = {"only"};
  k.state_probs = {Rational(1)};
  k.inputs = {{"a", "b"}};
  k.outputs = {"0", "1"};
  k.rows = {{{Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(0)}}};
  Dmc reduced = reduce_state_channel(k);
  CHECK(reduced.inputs == std::vector<std::string>{"a", "b"});
  CHECK(reduced.rows == k.rows[0]);
}

TEST_CASE("two identical perfect states keep capacity one") {
  StateChannel k;
  k.states = {"s0", "s1"};
  k.state_probs = {Rational(1, 2), Rational(1, 2)};
  k.inputs = {{"a", "b"}, {"a", "b"}};
  k.outputs = {"0", "1"};
  auto perfect = std::vector<std::vector<Rational>>{{Rational(1), Rational(0)},
                                                    {Rational(0), Rational(1)}};
  k.rows = {perfect, perfect};
  // By hand: the vector (a,a) maps to output 0 surely, (b,b) to 1 surely.
  Dmc reduced = reduce_state_channel(k);
  CHECK(state_channel_capacity(k).capacity == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(reduced.inputs.size() == 4);
}

TEST_CASE("acknowledgement channel capacities across the loss range") {
  auto ack_channel = [](const Rational& p) {
    StateChannel k;
    k.states = {"S5", "S6"};
    k.state_probs = {Rational(1) - p, p};
    k.inputs = {{"!ack", "!nack"}, {"!nack"}};
    k.outputs = {"?ack", "?nack"};
    k.rows = {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
              {{Rational(0), Rational(1)}}};
    return k;
  };
  CHECK(state_channel_capacity(ack_channel(Rational(0))).capacity ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(state_channel_capacity(ack_channel(Rational(1))).capacity ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(state_channel_capacity(ack_channel(Rational(1, 2))).capacity ==
        doctest::Approx(0.3219280949).epsilon(1e-5));
  for (int i = 1; i <= 9; ++i) {
    Rational p(i, 10);
    double via_state = state_channel_capacity(ack_channel(p)).capacity;
    double closed = z_channel_capacity(to_double(p));
    CAPTURE(i);
    CHECK(via_state == doctest::Approx(closed).epsilon(1e-5));
    CHECK(via_state <= 1.0 - to_double(p) + 1e-9);  // perfect-knowledge bound
  }
}

TEST_CASE("z-channel closed form") {
  CHECK(z_channel_capacity(0.0) == 1.0);
  CHECK(z_channel_capacity(1.0) == 0.0);
  CHECK(z_channel_capacity(0.5) == doctest::Approx(std::log2(1.25)).epsilon(1e-12));
  CHECK_THROWS_AS(z_channel_capacity(-0.1), Error);
  CHECK_THROWS_AS(z_channel_capacity(1.1), Error);
}

TEST_CASE("reduction rejects malformed state channels") {
  StateChannel k;
  k.states = {"s"};
  k.state_probs = {Rational(1)};
  k.inputs = {{}};
  k.outputs = {"0"};
  k.rows = {{}};
  CHECK_THROWS_AS(reduce_state_channel(k), Error);
}

TEST_SUITE_END();
