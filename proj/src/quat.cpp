#include "fueterlab/quat.hpp"

#include <ostream>

namespace fueterlab {

Quat Quat::unit(int axis) {
  check_axis(axis);
  Quat q;
  q[axis] = 1.0;
  return q;
}

void check_axis(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("axis index must be 1, 2 or 3");
}

double omega_form_eval(int axis, const Quat& u, const Quat& v) {
  check_axis(axis);
  const int i = axis;
  const int j = (axis % 3) + 1;
  const int k = (j % 3) + 1;
  // dx0^dxi + dxj^dxk
  return u[0] * v[i] - u[i] * v[0] + u[j] * v[k] - u[k] * v[j];
}

Eigen::Matrix4d left_mult_matrix(const Quat& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    Quat e;
    e[c] = 1.0;
    const Quat col = qmul(q, e);
    for (int r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

Eigen::Matrix4d J_matrix(int axis) { return left_mult_matrix(Quat::unit(axis)); }

Eigen::Matrix4d I_matrix(int axis) {
  Eigen::Matrix4d m;
  const Quat u = Quat::unit(axis);
  for (int c = 0; c < 4; ++c) {
    Quat e;
    e[c] = 1.0;
    const Quat col = -qmul(e, u);
    for (int r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

std::ostream& operator<<(std::ostream& os, const Quat& q) {
  return os << "(" << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ")";
}

}  // namespace fueterlab
