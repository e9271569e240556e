#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "quatkit/io.hpp"
#include "quatkit/optiq/optiq.hpp"
#include "quatkit/rng.hpp"

#include "support/oracles.hpp"

using namespace quatkit;
using namespace quatkit::optiq;

namespace {

SdpProblem random_problem(Rng& rng, int n, int m) {
    std::vector<HermitianQuatMatrix> constraints;
    for (int i = 0; i < m; ++i) constraints.push_back(oracles::random_hermitian(rng, n));
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = rng.gaussian();
    return SdpProblem(std::move(constraints), std::move(b), oracles::random_hermitian(rng, n));
}

}  // namespace

TEST_CASE("constraint map and adjoint") {
    const int n = 4;
    std::vector<HermitianQuatMatrix> constraints{
        herm_part(QuatMatrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n))))};
    Eigen::VectorXd b(1);
    b << 1.0;
    const SdpProblem p(constraints, b, HermitianQuatMatrix(QuatMatrix::identity(n)));

    const Eigen::VectorXd ax = apply_A(p, QuatMatrix::identity(n));
    CHECK(ax(0) == Catch::Approx(std::sqrt(4.0)));

    CHECK(apply_A_adjoint(p, Eigen::VectorXd::Zero(1)).frobenius_norm() == 0.0);

    SECTION("adjoint identity <A*(y), X> = y^T A(X) on random probes") {
        Rng rng(501);
        const SdpProblem rp = random_problem(rng, 5, 3);
        for (int t = 0; t < 20; ++t) {
            const HermitianQuatMatrix x = oracles::random_hermitian(rng, 5);
            Eigen::VectorXd y(3);
            for (int i = 0; i < 3; ++i) y(i) = rng.gaussian();
            const double lhs = real_inner(apply_A_adjoint(rp, y).matrix(), x.matrix());
            const double rhs = y.dot(apply_A(rp, x.matrix()));
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("hat operators") {
    SECTION("single normalized trace constraint is already white") {
        const int n = 4;
        std::vector<HermitianQuatMatrix> constraints{
            herm_part(QuatMatrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n))))};
        Eigen::VectorXd b(1);
        b << 2.0;
        const SdpProblem p(constraints, b, HermitianQuatMatrix(QuatMatrix::identity(n)));
        const HatOperators ops = build_hat_operators(p);
        CHECK(ops.R(0, 0) == Catch::Approx(1.0));
        CHECK(ops.b_hat(0) == Catch::Approx(2.0));
    }
    SECTION("isometry on random independent constraints") {
        Rng rng(503);
        const SdpProblem p = random_problem(rng, 5, 3);
        const HatOperators ops = build_hat_operators(p);
        // Ahat Ahat* = I: columns of the identity through both maps
        Eigen::MatrixXd gram_hat(3, 3);
        for (int j = 0; j < 3; ++j)
            gram_hat.col(j) = apply_A_hat(p, ops, apply_A_hat_adjoint(p, ops, Eigen::VectorXd::Unit(3, j)).matrix());
        CHECK((gram_hat - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-10);
    }
    SECTION("duplicated constraints are rejected") {
        Rng rng(505);
        const HermitianQuatMatrix h = oracles::random_hermitian(rng, 4);
        std::vector<HermitianQuatMatrix> constraints{h, h};
        Eigen::VectorXd b(2);
        b << 1.0, 1.0;
        const SdpProblem p(constraints, b, oracles::random_hermitian(rng, 4));
        CHECK_THROWS_AS(build_hat_operators(p), std::domain_error);
    }
}

TEST_CASE("equality snap") {
    Rng rng(507);
    Rng inst_rng(509);
    const KnownOptimumInstance inst = build_known_optimum_instance(6, 2, 2, 1e-2, inst_rng);
    const HatOperators ops = build_hat_operators(inst.problem);

    SECTION("feasible points are unchanged") {
        // the warm start preserves only the trace constraint; one snap makes
        // every constraint hold, after which the snap is a fixed point
        const HermitianQuatMatrix feasible = equality_snap(inst.problem, ops, inst.x_feas);
        const HermitianQuatMatrix snapped = equality_snap(inst.problem, ops, feasible);
        CHECK((snapped.matrix() - feasible.matrix()).frobenius_norm() < 1e-13);
    }
    SECTION("one full snap restores feasibility exactly") {
        // perturb away from the affine space but keep positive definiteness
        const HermitianQuatMatrix perturbed =
            herm_part(inst.x_feas.matrix() + QuatMatrix::identity(6) * 0.05);
        const double before = (ops.b_hat - apply_A_hat(inst.problem, ops, perturbed.matrix())).norm();
        CHECK(before > 1e-6);
        const HermitianQuatMatrix snapped = equality_snap(inst.problem, ops, perturbed);
        const double after = (ops.b_hat - apply_A_hat(inst.problem, ops, snapped.matrix())).norm();
        CHECK(after < 1e-12);
    }
    SECTION("eta = 1/2 halves the residual") {
        const HermitianQuatMatrix perturbed =
            herm_part(inst.x_feas.matrix() + QuatMatrix::identity(6) * 0.05);
        const double before = (ops.b_hat - apply_A_hat(inst.problem, ops, perturbed.matrix())).norm();
        const HermitianQuatMatrix snapped = equality_snap(inst.problem, ops, perturbed, 0.5);
        const double after = (ops.b_hat - apply_A_hat(inst.problem, ops, snapped.matrix())).norm();
        CHECK(after == Catch::Approx(before / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("logdet") {
    CHECK(logdet_hpd(HermitianQuatMatrix(QuatMatrix::identity(5))) == Catch::Approx(0.0).margin(1e-12));

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
    d.diagonal() << std::numbers::e, std::numbers::e;
    CHECK(logdet_hpd(HermitianQuatMatrix(QuatMatrix::from_real(d))) == Catch::Approx(2.0));

    Eigen::MatrixXd neg = Eigen::MatrixXd::Identity(2, 2);
    neg(1, 1) = -1.0;
    CHECK_THROWS_AS(logdet_hpd(HermitianQuatMatrix(QuatMatrix::from_real(neg))), std::domain_error);

    SECTION("agrees with the complex-embedding oracle on 50 instances") {
        Rng rng(511);
        for (int t = 0; t < 50; ++t) {
            const HermitianQuatMatrix x = oracles::random_hpd(rng, 4 + t % 4);
            CHECK(logdet_hpd(x) == Catch::Approx(oracles::complex_embedding_logdet(x.matrix())).margin(1e-9));
        }
    }
}

TEST_CASE("newton step") {
    SECTION("scalar one-constraint case has a unit Schur matrix") {
        const int n = 4;
        std::vector<HermitianQuatMatrix> constraints{
            herm_part(QuatMatrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n))))};
        Eigen::VectorXd b(1);
        b << std::sqrt(static_cast<double>(n));  // A(I) = sqrt(n)
        const SdpProblem p(constraints, b, HermitianQuatMatrix(QuatMatrix::identity(n)));
        const HatOperators ops = build_hat_operators(p);
        const NewtonDirection dir =
            newton_step(p, ops, HermitianQuatMatrix(QuatMatrix::identity(n)), Eigen::VectorXd::Zero(1), 1.0);
        // M = Ahat H^{-1} Ahat* = <I/sqrt(n), X (I/sqrt(n)) X> / mu = 1 at X = I
        CHECK(dir.schur(0, 0) == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(dir.r_p(0) == Catch::Approx(0.0).margin(1e-13));
    }

    SECTION("zero residuals give a zero direction") {
        // at X = I, y = 0, mu = 1 with C = I and a feasible trace constraint,
        // r_d = C - mu X^{-1} = 0 and r_p = 0
        const int n = 3;
        std::vector<HermitianQuatMatrix> constraints{
            herm_part(QuatMatrix::identity(n) * (1.0 / std::sqrt(static_cast<double>(n))))};
        Eigen::VectorXd b(1);
        b << std::sqrt(static_cast<double>(n));
        const SdpProblem p(constraints, b, HermitianQuatMatrix(QuatMatrix::identity(n)));
        const HatOperators ops = build_hat_operators(p);
        const NewtonDirection dir =
            newton_step(p, ops, HermitianQuatMatrix(QuatMatrix::identity(n)), Eigen::VectorXd::Zero(1), 1.0);
        CHECK(dir.dX.frobenius_norm() < 1e-10);
        CHECK(dir.dy_hat.norm() < 1e-10);
    }

    SECTION("direction satisfies the linearized KKT system") {
        Rng rng(513);
        const KnownOptimumInstance inst = build_known_optimum_instance(6, 2, 3, 1e-2, rng);
        const HatOperators ops = build_hat_operators(inst.problem);
        Eigen::VectorXd y(inst.problem.m());
        for (int i = 0; i < y.size(); ++i) y(i) = 0.1 * rng.gaussian();
        const double mu = 0.5;
        const HermitianQuatMatrix x = inst.x_feas;
        const NewtonDirection dir = newton_step(inst.problem, ops, x, y, mu);

        // H[dX] + Ahat*(dy) + r_d = 0 with H[W] = mu X^{-1} W X^{-1}
        const HermitianQuatMatrix xinv = optiq::detail::hpd_inverse(x);
        const QuatMatrix h_dx = xinv.matrix() * dir.dX.matrix() * xinv.matrix() * mu;
        const QuatMatrix dual_gap =
            h_dx + apply_A_hat_adjoint(inst.problem, ops, dir.dy_hat).matrix() + dir.r_d.matrix();
        CHECK(dual_gap.frobenius_norm() < 1e-8);

        // Ahat(dX) = r_p
        const Eigen::VectorXd primal_gap = apply_A_hat(inst.problem, ops, dir.dX.matrix()) - dir.r_p;
        CHECK(primal_gap.norm() < 1e-8);

        // Schur matrix is symmetric positive definite
        CHECK((dir.schur - dir.schur.transpose()).norm() < 1e-12);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dir.schur, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("fixed-mu barrier solve on the known-optimum instance") {
    Rng rng(515);
    const KnownOptimumInstance inst = build_known_optimum_instance(8, 3, 2, 1e-2, rng);
    const HatOperators ops = build_hat_operators(inst.problem);

    const BarrierState st = solve_barrier_fixed_mu(inst.problem, ops, inst.x_feas, 1e-2, 1e-10, 50);
    CHECK(st.converged);
    CHECK(st.primal_residual <= 1e-10);
    CHECK(st.dual_residual <= 1e-10);

    // objective scaling <C, X(mu)> ~ (n - r) mu for small mu
    const double obj = real_inner(inst.problem.C.matrix(), st.X.matrix());
    CHECK(obj > 0.0);
    CHECK(obj == Catch::Approx(5.0 * 1e-2).epsilon(0.5));

    // slack is mu X^{-1}
    const HermitianQuatMatrix xinv = optiq::detail::hpd_inverse(st.X);
    CHECK((st.S.matrix() - xinv.matrix() * 1e-2).frobenius_norm() < 1e-9 * st.S.frobenius_norm());

    SECTION("an optimal start needs no further Newton iterations") {
        const BarrierState again = solve_barrier_fixed_mu(inst.problem, ops, st.X, 1e-2, 1e-8, 50, &st.y_hat);
        CHECK(again.converged);
        CHECK(again.newton_iterations == 0);
    }
}

TEST_CASE("barrier path on the certified instance") {
    Rng rng(517);
    const KnownOptimumInstance inst = build_known_optimum_instance(8, 3, 2, 1e-2, rng);
    const PathResult path = solve_barrier_path(inst.problem, inst.x_feas, 1e-1, 0.5, 1e-8, 1e-10, 50);

    const int n = 8, r = 3;
    REQUIRE(!path.history.empty());
    CHECK(path.history.back().mu == Catch::Approx(1e-8));

    double prev_obj = std::numeric_limits<double>::infinity();
    for (const PathRecord& rec : path.history) {
        CHECK(rec.feasibility <= 1e-10);
        CHECK(rec.lambda_min > 0.0);
        CHECK(rec.objective <= prev_obj + 1e-12);
        prev_obj = rec.objective;
        if (rec.mu <= 1e-3) {
            CHECK(rec.objective / rec.mu >= 0.5 * (n - r));
            CHECK(rec.objective / rec.mu <= 2.0 * (n - r));
            CHECK(rec.lambda_min / rec.mu >= 0.1);
            CHECK(rec.lambda_min / rec.mu <= 10.0);
        }
    }
    CHECK(std::abs(path.history.back().lambda_max - 1.0) < 1e-3);

    const double relerr =
        (path.state.X.matrix() - inst.x_star.matrix()).frobenius_norm() / inst.x_star.frobenius_norm();
    CHECK(relerr <= 1e-5);
}

TEST_CASE("known-optimum instance construction") {
    Rng rng(519);
    const int n = 8, r = 3;
    const KnownOptimumInstance inst = build_known_optimum_instance(n, r, 2, 1e-2, rng);

    CHECK(real_inner(inst.problem.C.matrix(), inst.x_star.matrix()) == Catch::Approx(0.0).margin(1e-12));
    CHECK(trace(inst.x_star.matrix()).w == Catch::Approx(static_cast<double>(r)).epsilon(1e-12));
    CHECK(trace(inst.x_feas.matrix()).w == Catch::Approx(static_cast<double>(r)).epsilon(1e-12));

    // A(X*) = b by construction
    CHECK((apply_A(inst.problem, inst.x_star.matrix()) - inst.problem.b).norm() < 1e-12);

    // extra constraints are trace-free
    for (int i = 1; i < inst.problem.m(); ++i)
        CHECK(real_inner(inst.problem.H[i].matrix(), QuatMatrix::identity(n)) == Catch::Approx(0.0).margin(1e-12));

    // the warm start is strictly feasible with the predicted margin
    const Eigen::VectorXd ev = decomp::hermitian_eig(inst.x_feas);
    CHECK(ev.minCoeff() >= 1e-2 * static_cast<double>(r) / n - 1e-12);

    CHECK_THROWS_AS(build_known_optimum_instance(5, 0, 1, 1e-2, rng), std::invalid_argument);
    CHECK_THROWS_AS(build_known_optimum_instance(5, 5, 1, 1e-2, rng), std::invalid_argument);
}

TEST_CASE("qsdp file round trip") {
    Rng rng(521);
    const KnownOptimumInstance inst = build_known_optimum_instance(5, 2, 2, 1e-2, rng);
    std::vector<QuatMatrix> raw;
    for (const auto& h : inst.problem.H) raw.push_back(h.matrix());
    write_qsdp("test_problem.qsdp", inst.problem.C.matrix(), raw, inst.problem.b);

    const QsdpFile f = read_qsdp("test_problem.qsdp");
    CHECK(f.C == inst.problem.C.matrix());
    REQUIRE(f.H.size() == raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(f.H[i] == raw[i]);
    CHECK((f.b - inst.problem.b).norm() == 0.0);
    std::remove("test_problem.qsdp");
}
