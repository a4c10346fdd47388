#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zeno/errors.hpp"
#include "zeno/pauli.hpp"

using namespace zeno;

namespace {

std::string random_letters(std::size_t n, std::mt19937& rng) {
  static const char letters[] = "IXYZ";
  std::string s(n, 'I');
  for (auto& c : s) c = letters[rng() % 4];
  return s;
}

}  // namespace

TEST_CASE("parse and print round trip") {
  for (const char* text : {"XZI", "-YY", "+iZ", "-iXYZ", "III"}) {
    CHECK(PauliOperator::parse(text).to_string() == text);
  }
  CHECK(PauliOperator::parse("+1XX").to_string() == "XX");
  CHECK(PauliOperator::parse("-1XX").to_string() == "-XX");
  CHECK(PauliOperator::parse("+iXX").phase() == Phase::plus_i);
}

TEST_CASE("parse errors name the character") {
  try {
    PauliOperator::parse("XQZ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
    CHECK(e.code() == ErrorCode::parse);
  }
  CHECK_THROWS_AS(PauliOperator::parse(""), ParseError);
  CHECK_THROWS_AS(PauliOperator::parse("-"), ParseError);
}

TEST_CASE("Y carries no hidden phase") {
  const auto y = PauliOperator::parse("Y");
  CHECK(y.x(0));
  CHECK(y.z(0));
  CHECK(max_abs(to_matrix(y) - oracle::pauli_kron("Y")) == 0.0);
}

TEST_CASE("qubit 0 is the most significant bit") {
  const auto p = PauliOperator::parse("XI");
  CHECK(p.x_mask() == 2U);
  const Matrix m = to_matrix(p);
  CHECK(m(2, 0) == Complex(1.0, 0.0));
}

TEST_CASE("single-qubit products") {
  const auto X = PauliOperator::parse("X"), Y = PauliOperator::parse("Y"),
             Z = PauliOperator::parse("Z");
  CHECK((X * Y) == PauliOperator::parse("iZ"));
  CHECK((Y * X) == PauliOperator::parse("-iZ"));
  CHECK((Y * Z) == PauliOperator::parse("iX"));
  CHECK((Z * X) == PauliOperator::parse("iY"));
  CHECK((X * X).is_identity());
  CHECK(PauliOperator::parse("XX") * PauliOperator::parse("ZZ") == PauliOperator::parse("-YY"));
}

TEST_CASE("matrix form agrees with the Kronecker oracle") {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto letters = random_letters(1 + t % 4, rng);
    CHECK(max_abs(to_matrix(PauliOperator::parse(letters)) - oracle::pauli_kron(letters)) == 0.0);
    const auto minus_i = PauliOperator::parse("-i" + letters);
    CHECK(max_abs(to_matrix(minus_i) - Complex(0, -1) * oracle::pauli_kron(letters)) == 0.0);
  }
}

TEST_CASE("product is a homomorphism and commutation matches matrices") {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto a = PauliOperator::parse(random_letters(n, rng));
    const auto b = PauliOperator::parse(random_letters(n, rng));
    const Matrix ma = to_matrix(a), mb = to_matrix(b);
    CHECK(max_abs(to_matrix(a * b) - ma * mb) < 1e-15);
    CHECK(commutes(a, b) == (max_abs(ma * mb - mb * ma) < 1e-12));
  }
}

TEST_CASE("dense actions on joint operators") {
  std::mt19937 rng(3);
  const auto p = PauliOperator::parse("-XY");
  const Matrix a = Matrix::Random(8, 8);
  const Matrix pb = oracle::hamiltonian_kron({{"XY", Matrix::Identity(2, 2)}}) * -1.0;
  CHECK(max_abs(apply_left(p, a) - pb * a) < 1e-14);
  CHECK(max_abs(apply_right(p, a) - a * pb) < 1e-14);
  CHECK(max_abs(conjugate(p, a) - pb * a * pb.adjoint()) < 1e-14);
}

TEST_CASE("dimension and capacity errors") {
  CHECK_THROWS_AS(PauliOperator::parse("X") * PauliOperator::parse("XX"), Error);
  try {
    to_matrix(PauliOperator::identity(13));
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::capacity);
  }
}

TEST_CASE("weight, hermiticity and hashing") {
  const auto p = PauliOperator::parse("iXIZ");
  CHECK(p.weight() == 2);
  CHECK_FALSE(p.is_hermitian());
  CHECK(p.with_phase(Phase::minus_one).is_hermitian());
  CHECK(std::hash<PauliOperator>{}(p) == std::hash<PauliOperator>{}(PauliOperator::parse("iXIZ")));
  CHECK(p.letters() == "XIZ");
}
