#include "doctest.h"
#include "xim/scalar.hpp"

using namespace xim;

TEST_CASE("scalar basics and digit promotion") {
  Scalar a(2L, 40);
  Scalar b(3L, 80);
  Scalar c = a * b;
  CHECK(c.digits() == 80);
  CHECK(c.to_double() == doctest::Approx(6.0));

  Scalar d = Scalar::parse("0.1", 60);
  CHECK(d.digits() == 60);
  // 0.1 at 60 digits is accurate well beyond double.
  Scalar err = abs(d * Scalar(10L, 60) - 1);
  CHECK(err < pow10(-55, 60));
}

TEST_CASE("default digit budget floor") {
  Scalar::set_default_digits(10);  // below the floor, must clamp to 30
  Scalar x;
  CHECK(x.digits() >= 30);
  Scalar::set_default_digits(50);
}

TEST_CASE("parse round trip at high precision") {
  const char* s = "3.14159265358979323846264338327950288419716939937510";
  Scalar x = Scalar::parse(s, 50);
  Scalar delta = abs(x - pi(50));
  CHECK(delta < pow10(-49, 50));
}

TEST_CASE("transcendental identities at 60 digits") {
  Scalar x(0.7, 60);
  CHECK(abs(sin(x) * sin(x) + cos(x) * cos(x) - 1) < pow10(-58, 60));
  CHECK(abs(exp(log(Scalar(5L, 60))) - 5) < pow10(-57, 60));
  CHECK(abs(atan2(Scalar(1L, 60), Scalar(1L, 60)) - pi(60) / 4) < pow10(-58, 60));
}

TEST_CASE("complex arithmetic and exp/log round trip") {
  Complex z(Scalar(1.25, 50), Scalar(-0.75, 50));
  Complex w = exp(log(z));
  CHECK(abs(w - z) < pow10(-47, 50));

  Complex i(Scalar(0L, 50), Scalar(1L, 50));
  Complex e_ipi = exp(i * Complex(pi(50)));
  CHECK(abs(e_ipi + Scalar(1L, 50)) < pow10(-48, 50));

  CHECK(abs(pow(z, 3) - z * z * z) < pow10(-46, 50));
  CHECK(abs(z * inv(z) - Complex(1L, 50)) < pow10(-47, 50));
}

TEST_CASE("real gamma spot values") {
  CHECK(abs(gamma(Scalar(5L, 50)) - 24) < pow10(-45, 50));
  Scalar g14 = gamma(Scalar(0.25, 50));
  CHECK(abs(g14 - Scalar::parse("3.6256099082219083119306851558676720029951676828800654674333", 50)) <
        pow10(-45, 50));
}
