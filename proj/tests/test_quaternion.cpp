#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "sopose/quaternion.hpp"
#include "sopose/random.hpp"

using namespace sopose;
using namespace sopose::testing;

TEST_CASE("canonicalize picks the positive hemisphere") {
    const Quaternion a = canonicalize({-1, 0, 0, 0});
    CHECK(a.w == doctest::Approx(1.0));
    CHECK(a.x == 0.0);

    const Quaternion b = canonicalize({0, 0, 0, -1});
    CHECK(b.w == 0.0);
    CHECK(b.z == doctest::Approx(1.0));

    const Quaternion c = canonicalize({2, 0, 0, 0});
    CHECK(c.w == doctest::Approx(1.0));

    CHECK_THROWS_WITH_AS(canonicalize({0, 0, 0, 0}), "degenerate quaternion",
                         std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent and norm-1") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        Quaternion raw{normal_double(rng), normal_double(rng), normal_double(rng),
                       normal_double(rng)};
        if (raw.norm() < 1e-9) continue;
        const Quaternion once = canonicalize(raw);
        const Quaternion twice = canonicalize(once);
        CHECK(std::abs(once.norm() - 1.0) < 1e-9);
        CHECK(once.w == twice.w);
        CHECK(once.x == twice.x);
        CHECK(once.y == twice.y);
        CHECK(once.z == twice.z);
        CHECK(once.w >= 0.0);
    }
}

TEST_CASE("normalized_distance fixtures") {
    const Quaternion id = Quaternion::identity();
    const Quaternion rz180{0, 0, 0, 1};
    const Quaternion rz90 = from_axis_angle({0, 0, 1}, kPi / 2);

    CHECK(normalized_distance(id, id) == 0.0);
    CHECK(normalized_distance(id, rz180) == doctest::Approx(1.0));
    CHECK(normalized_distance(id, rz90) == doctest::Approx(0.5));
}

TEST_CASE("normalized_distance symmetry and sign invariance") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion a = sample_uniform(rng);
        const Quaternion b = sample_uniform(rng);
        const double d = normalized_distance(a, b);
        CHECK(d == normalized_distance(b, a));
        CHECK(d == normalized_distance(a.negated(), b));
        CHECK(d == normalized_distance(a, b.negated()));
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("geodesic_angle fixtures and consistency") {
    const Quaternion id = Quaternion::identity();
    const Quaternion rx180{0, 1, 0, 0};
    const Quaternion rz90 = from_axis_angle({0, 0, 1}, kPi / 2);

    CHECK(geodesic_angle(id, id) == 0.0);
    CHECK(geodesic_angle(id, rx180) == doctest::Approx(kPi));
    CHECK(geodesic_angle(id, rz90) == doctest::Approx(kPi / 2));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const Quaternion a = sample_uniform(rng);
        const Quaternion b = sample_uniform(rng);
        CHECK(geodesic_angle(a, b) == doctest::Approx(kPi * normalized_distance(a, b)).epsilon(1e-15));
    }
}

TEST_CASE("geodesic triangle inequality") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion a = sample_uniform(rng);
        const Quaternion b = sample_uniform(rng);
        const Quaternion c = sample_uniform(rng);
        CHECK(geodesic_angle(a, c) <= geodesic_angle(a, b) + geodesic_angle(b, c) + 1e-9);
    }
}

TEST_CASE("compose and rotate_vec") {
    std::mt19937_64 rng(3);
    const Quaternion q = sample_uniform(rng);

    const Quaternion qi = compose(q, Quaternion::identity());
    CHECK(angle_between(qi, q) < 1e-12);

    const Quaternion qc = compose(q, q.conjugate());
    CHECK(angle_between(qc, Quaternion::identity()) < 1e-9);

    const Quaternion rz90 = from_axis_angle({0, 0, 1}, kPi / 2);
    const Vec3 v = rotate_vec(rz90, {1, 0, 0});
    CHECK(v.x == doctest::Approx(0.0));
    CHECK(v.y == doctest::Approx(1.0));
    CHECK(v.z == doctest::Approx(0.0));

    // Quaternion rotation agrees with the matrix route.
    for (int i = 0; i < 200; ++i) {
        const Quaternion r = sample_uniform(rng);
        const Vec3 p{normal_double(rng), normal_double(rng), normal_double(rng)};
        const Vec3 a = rotate_vec(r, p);
        const Vec3 b = to_rotation_matrix(r) * p;
        CHECK(norm(a - b) < 1e-9);
    }
}

TEST_CASE("rotation matrices are orthonormal with unit determinant") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const RotationMatrix r = to_rotation_matrix(sample_uniform(rng));
        for (int c1 = 0; c1 < 3; ++c1) {
            for (int c2 = 0; c2 < 3; ++c2) {
                double d = 0.0;
                for (int row = 0; row < 3; ++row) d += r(row, c1) * r(row, c2);
                CHECK(d == doctest::Approx(c1 == c2 ? 1.0 : 0.0).epsilon(1e-9));
            }
        }
        const double det = r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
                           r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
                           r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
        CHECK(det == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("rotation matrix round trip") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const Quaternion q = sample_uniform(rng);
        const Quaternion back = from_rotation_matrix(to_rotation_matrix(q));
        CHECK(angle_between(q, back) < 1e-9);
    }
}

TEST_CASE("euler fixtures") {
    const Quaternion id = euler_to_quat({0, 0, 0});
    CHECK(angle_between(id, Quaternion::identity()) == 0.0);

    const Quaternion yaw90 = euler_to_quat({kPi / 2, 0, 0});
    CHECK(angle_between(yaw90, from_axis_angle({0, 0, 1}, kPi / 2)) < 1e-12);
}

TEST_CASE("euler round trip away from the poles") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10000; ++i) {
        EulerAngles e;
        e.yaw = uniform_double(rng, -kPi, kPi);
        e.pitch = uniform_double(rng, -kPi / 2 + 1e-6, kPi / 2 - 1e-6);
        e.roll = uniform_double(rng, -kPi, kPi);
        const EulerAngles back = quat_to_euler(euler_to_quat(e));
        CHECK(std::abs(back.yaw - e.yaw) < 1e-9);
        CHECK(std::abs(back.pitch - e.pitch) < 1e-9);
        CHECK(std::abs(back.roll - e.roll) < 1e-9);
    }
}

TEST_CASE("euler pole handling returns the roll-zero representative") {
    for (const double pitch : {kPi / 2, -kPi / 2}) {
        for (const double yaw : {0.0, 0.7, -2.1}) {
            const Quaternion q = euler_to_quat({yaw, pitch, 0.4});
            const EulerAngles e = quat_to_euler(q);
            CHECK(e.roll == 0.0);
            CHECK(std::abs(std::abs(e.pitch) - kPi / 2) < 1e-9);
            // Still the same rotation.
            CHECK(angle_between(euler_to_quat(e), q) < 1e-9);
        }
    }
}

TEST_CASE("sample_uniform is deterministic per seed") {
    std::mt19937_64 a(123), b(123), c(124);
    const Quaternion qa = sample_uniform(a);
    const Quaternion qb = sample_uniform(b);
    const Quaternion qc = sample_uniform(c);
    CHECK(qa.w == qb.w);
    CHECK(qa.x == qb.x);
    CHECK(qa.y == qb.y);
    CHECK(qa.z == qb.z);
    CHECK(qa.w != qc.w);
}

TEST_CASE("sample_uniform matches the uniform-rotation moments") {
    // Monte-Carlo oracle: for quaternions uniform on S^3 the marginal of
    // one component has density (2/pi) sqrt(1-w^2), so E|w| = 4/(3 pi).
    std::mt19937_64 rng(2024);
    const int n = 100000;
    double mean_abs_w = 0.0;
    int far_from_identity = 0;
    for (int i = 0; i < n; ++i) {
        const Quaternion q = sample_uniform(rng);
        mean_abs_w += std::abs(q.w);
        if (normalized_distance(q, Quaternion::identity()) > 0.9) ++far_from_identity;
    }
    mean_abs_w /= n;
    CHECK(mean_abs_w == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(0.025));
    CHECK(std::abs(mean_abs_w - 4.0 / (3.0 * kPi)) < 0.01);
    // Nonzero density near distance 1: the analytic mass of that tail is
    // about 0.199; demand at least half of it.
    CHECK(far_from_identity > n / 10);
}
