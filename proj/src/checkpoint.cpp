#include "osar/checkpoint.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "osar/errors.hpp"

namespace osar {
namespace {

std::string hex(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double read_double(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw ConfigError("checkpoint truncated");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError("checkpoint: bad number '" + token + "'");
  return v;
}

void expect(std::istream& in, const std::string& word) {
  std::string token;
  if (!(in >> token) || token != word)
    throw ConfigError("checkpoint: expected '" + word + "', got '" + token + "'");
}

long long read_int(std::istream& in, const std::string& key) {
  expect(in, key);
  long long v = 0;
  if (!(in >> v)) throw ConfigError("checkpoint: bad integer for " + key);
  return v;
}

}  // namespace

void save_checkpoint(std::ostream& out, const SolverState& state) {
  const auto& s = state.stats;
  const Index m = s.atoms();
  out << "osar-checkpoint 1\n";
  out << "atoms " << m << '\n';
  out << "pulse_count " << s.pulse_count << '\n';
  out << "fallbacks " << s.power_iteration_fallbacks << '\n';
  out << "started " << (state.started ? 1 : 0) << '\n';
  out << "momentum_t " << hex(state.momentum_t) << '\n';
  out << "lipschitz " << hex(s.lipschitz) << '\n';
  out << "c_hat\n";
  for (Index i = 0; i < m; ++i) out << hex(state.c_hat[i]) << '\n';
  out << "b\n";
  for (Index i = 0; i < m; ++i) out << hex(s.b[i].real()) << ' ' << hex(s.b[i].imag()) << '\n';
  out << "A\n";
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (j) out << ' ';
      out << hex(s.a(i, j).real()) << ' ' << hex(s.a(i, j).imag());
    }
    out << '\n';
  }
}

SolverState load_checkpoint(std::istream& in) {
  expect(in, "osar-checkpoint");
  if (read_double(in) != 1.0) throw ConfigError("checkpoint: unsupported version");
  const long long m = read_int(in, "atoms");
  if (m < 1) throw ConfigError("checkpoint: atom count must be positive");
  SolverState state;
  auto& s = state.stats;
  s.pulse_count = read_int(in, "pulse_count");
  s.power_iteration_fallbacks = read_int(in, "fallbacks");
  state.started = read_int(in, "started") != 0;
  expect(in, "momentum_t");
  state.momentum_t = read_double(in);
  expect(in, "lipschitz");
  s.lipschitz = read_double(in);

  state.c_hat.resize(m);
  expect(in, "c_hat");
  for (Index i = 0; i < m; ++i) state.c_hat[i] = read_double(in);
  s.b.resize(m);
  expect(in, "b");
  for (Index i = 0; i < m; ++i) {
    const double re = read_double(in);
    s.b[i] = Complex(re, read_double(in));
  }
  s.a.resize(m, m);
  expect(in, "A");
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const double re = read_double(in);
      s.a(i, j) = Complex(re, read_double(in));
    }
  return state;
}

}  // namespace osar
