#include "follow/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "follow/errors.hpp"

namespace follow {

double config_max_norm(const Config& a, const Config& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double config_distance(const Config& a, const Config& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Config interpolate_config(const Config& a, const Config& b, double t) {
    Config out;
    out.angles.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.angles[i] = a[i] + (b[i] - a[i]) * t;
    return out;
}

ArmModel::ArmModel(std::vector<double> link_lengths, std::vector<JointLimit> joint_limits,
                   TaskPose base_pose)
    : link_lengths_(std::move(link_lengths)),
      joint_limits_(std::move(joint_limits)),
      base_pose_(TaskPose::make(base_pose.x, base_pose.y, base_pose.theta)) {
    if (link_lengths_.empty()) throw InputError("arm needs at least one link");
    if (joint_limits_.size() != link_lengths_.size())
        throw InputError("joint_limits size must match link count");
    for (double l : link_lengths_) {
        if (!(l > 0.0)) throw InputError("link lengths must be positive");
        total_reach_ += l;
    }
    for (const auto& jl : joint_limits_)
        if (!(jl.lo < jl.hi)) throw InputError("joint limit lo must be < hi");
}

bool ArmModel::within_limits(const Config& q) const {
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] < joint_limits_[i].lo || q[i] > joint_limits_[i].hi) return false;
    return true;
}

namespace {

void check_dim(const ArmModel& arm, const Config& q) {
    if (q.size() != arm.dof())
        throw InputError("config dimension " + std::to_string(q.size()) +
                         " does not match arm dof " + std::to_string(arm.dof()));
}

}  // namespace

TaskPose fk(const ArmModel& arm, const Config& q) {
    check_dim(arm, q);
    double phi = arm.base_pose().theta;
    double x = arm.base_pose().x;
    double y = arm.base_pose().y;
    for (std::size_t i = 0; i < arm.dof(); ++i) {
        phi += q[i];
        x += arm.link_lengths()[i] * std::cos(phi);
        y += arm.link_lengths()[i] * std::sin(phi);
    }
    return TaskPose::make(x, y, phi);
}

std::vector<Segment2> fk_links(const ArmModel& arm, const Config& q) {
    check_dim(arm, q);
    std::vector<Segment2> segs;
    segs.reserve(arm.dof());
    double phi = arm.base_pose().theta;
    Point2 p{arm.base_pose().x, arm.base_pose().y};
    for (std::size_t i = 0; i < arm.dof(); ++i) {
        phi += q[i];
        Point2 next{p.x + arm.link_lengths()[i] * std::cos(phi),
                    p.y + arm.link_lengths()[i] * std::sin(phi)};
        segs.push_back(Segment2{p, next});
        p = next;
    }
    return segs;
}

Jacobian jacobian(const ArmModel& arm, const Config& q) {
    check_dim(arm, q);
    const std::size_t n = arm.dof();
    // Joint j moves every link i >= j; accumulate the suffix sums backwards.
    Jacobian jac;
    jac.dx.assign(n, 0.0);
    jac.dy.assign(n, 0.0);
    jac.dtheta.assign(n, 1.0);
    std::vector<double> phis(n);
    double phi = arm.base_pose().theta;
    for (std::size_t i = 0; i < n; ++i) {
        phi += q[i];
        phis[i] = phi;
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        sx += -arm.link_lengths()[j] * std::sin(phis[j]);
        sy += arm.link_lengths()[j] * std::cos(phis[j]);
        jac.dx[j] = sx;
        jac.dy[j] = sy;
    }
    return jac;
}

namespace {

// Pick a representative of `angle` (mod 2pi) inside [lo, hi], preferring the
// normalized value, then -2pi / +2pi shifts. Returns false if none fits.
bool fit_joint(double angle, const JointLimit& lim, double& out) {
    const double base = normalize_angle(angle);
    for (double cand : {base, base - 2.0 * M_PI, base + 2.0 * M_PI}) {
        if (cand >= lim.lo && cand <= lim.hi) {
            out = cand;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Config> sample_ik(const ArmModel& arm, const TaskPose& target, int count,
                              RandomEngine& rng, const IkParams& params) {
    if (count < 1) throw InputError("sample_ik count must be >= 1");
    const std::size_t n = arm.dof();
    if (n < 3) throw InputError("sample_ik needs at least a 3R chain");

    const std::size_t nfree = n - 3;
    const double a = arm.link_lengths()[n - 3];
    const double b = arm.link_lengths()[n - 2];
    const double ln = arm.link_lengths()[n - 1];

    // Wrist point: back off one link along the target orientation.
    const double wx = target.x - ln * std::cos(target.theta);
    const double wy = target.y - ln * std::sin(target.theta);

    std::vector<Config> found;
    const long budget = static_cast<long>(params.attempts_per_count) * count;
    for (long attempt = 0; attempt < budget; ++attempt) {
        Config q;
        q.angles.resize(n);
        double phi = arm.base_pose().theta;
        double ox = arm.base_pose().x;
        double oy = arm.base_pose().y;
        for (std::size_t j = 0; j < nfree; ++j) {
            q[j] = rng.uniform(arm.joint_limits()[j].lo, arm.joint_limits()[j].hi);
            phi += q[j];
            ox += arm.link_lengths()[j] * std::cos(phi);
            oy += arm.link_lengths()[j] * std::sin(phi);
        }

        const double dx = wx - ox;
        const double dy = wy - oy;
        const double d2 = dx * dx + dy * dy;
        const double d = std::sqrt(d2);
        if (d > a + b + 1e-12 || d < std::fabs(a - b) - 1e-12) {
            if (nfree == 0) break;  // fixed sub-chain, retrying cannot help
            continue;
        }
        double cos_elbow = (d2 - a * a - b * b) / (2.0 * a * b);
        cos_elbow = std::clamp(cos_elbow, -1.0, 1.0);
        const double elbow = std::acos(cos_elbow);

        for (double branch : {elbow, -elbow}) {
            Config cand = q;
            const double shoulder =
                std::atan2(dy, dx) - std::atan2(b * std::sin(branch), a + b * std::cos(branch));
            double j1, j2, j3;
            if (!fit_joint(shoulder - phi, arm.joint_limits()[n - 3], j1)) continue;
            if (!fit_joint(branch, arm.joint_limits()[n - 2], j2)) continue;
            const double wrist_heading = phi + j1 + j2;
            if (!fit_joint(target.theta - wrist_heading, arm.joint_limits()[n - 1], j3)) continue;
            cand[n - 3] = j1;
            cand[n - 2] = j2;
            cand[n - 1] = j3;

            if (task_distance(fk(arm, cand), target, MetricWeights{}) > params.tolerance)
                continue;
            bool duplicate = false;
            for (const auto& other : found)
                if (config_distance(cand, other) <= params.distinct_eps) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            found.push_back(std::move(cand));
            if (static_cast<int>(found.size()) >= count) return found;
        }
        if (nfree == 0) break;  // deterministic sub-chain: one attempt exhausts it
    }
    return found;
}

}  // namespace follow
