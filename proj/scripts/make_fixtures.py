#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/.

The bundled trajectories are synthetic stand-ins (quintic joint moves, sine
swings, a constant-acceleration slider run), and the 7-DOF arm description
uses approximate inertial values; see data/README.md.
"""

import math
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def fmt(x):
    return "%.17g" % x


def write(path, text):
    full = os.path.join(ROOT, path)
    os.makedirs(os.path.dirname(full), exist_ok=True)
    with open(full, "w", newline="\n") as f:
        f.write(text)
    print("wrote", full)


def cylinder_inertia(mass, radius, height):
    ixx = mass * (3.0 * radius**2 + height**2) / 12.0
    izz = mass * radius**2 / 2.0
    return ixx, ixx, izz


def panda_urdf():
    # Kinematic layout of the common 7-DOF Panda arm description; masses are
    # representative and rotational inertias are solid-cylinder
    # approximations, adequate for examples but not an identified model.
    joints = [
        # name, parent, child, xyz, rpy
        ("joint1", "link0", "link1", (0, 0, 0.333), (0, 0, 0)),
        ("joint2", "link1", "link2", (0, 0, 0), (-1.5707963267948966, 0, 0)),
        ("joint3", "link2", "link3", (0, -0.316, 0), (1.5707963267948966, 0, 0)),
        ("joint4", "link3", "link4", (0.0825, 0, 0), (1.5707963267948966, 0, 0)),
        ("joint5", "link4", "link5", (-0.0825, 0.384, 0), (-1.5707963267948966, 0, 0)),
        ("joint6", "link5", "link6", (0, 0, 0), (1.5707963267948966, 0, 0)),
        ("joint7", "link6", "link7", (0.088, 0, 0), (1.5707963267948966, 0, 0)),
    ]
    limits = [(87, 2.175)] * 4 + [(12, 2.61)] * 3
    mass = {
        "link0": 3.06, "link1": 4.971, "link2": 0.647, "link3": 3.229,
        "link4": 3.588, "link5": 1.226, "link6": 1.667, "link7": 0.735,
    }
    com = {
        "link0": (-0.03, 0.0, 0.07),
        "link1": (0.0, -0.035, -0.07),
        "link2": (0.0, -0.07, 0.03),
        "link3": (0.033, 0.03, -0.07),
        "link4": (-0.053, 0.104, 0.027),
        "link5": (0.0, 0.04, -0.1),
        "link6": (0.06, 0.0, 0.0),
        "link7": (0.01, 0.01, 0.08),
    }
    dims = {
        "link0": (0.12, 0.15), "link1": (0.06, 0.22), "link2": (0.06, 0.12),
        "link3": (0.055, 0.18), "link4": (0.055, 0.18), "link5": (0.05, 0.14),
        "link6": (0.05, 0.12), "link7": (0.04, 0.08),
    }

    def link_xml(name):
        ixx, iyy, izz = cylinder_inertia(mass[name], *dims[name])
        cx, cy, cz = com[name]
        return f"""  <link name="{name}">
    <inertial>
      <origin xyz="{cx:.8g} {cy:.8g} {cz:.8g}"/>
      <mass value="{mass[name]:.8g}"/>
      <inertia ixx="{ixx:.8g}" ixy="0" ixz="0" iyy="{iyy:.8g}" iyz="0" izz="{izz:.8g}"/>
    </inertial>
  </link>
"""

    out = ['<?xml version="1.0"?>\n']
    out.append("<!-- 7-DOF collaborative arm in the layout of the publicly available\n"
               "     Panda description. Masses are representative and inertias are\n"
               "     solid-cylinder approximations: a stand-in for examples, not an\n"
               "     identified model. -->\n")
    out.append('<robot name="panda_stand_in">\n')
    out.append(link_xml("link0"))
    for i, (name, parent, child, xyz, rpy) in enumerate(joints):
        effort, velocity = limits[i]
        out.append(f"""  <joint name="{name}" type="revolute">
    <parent link="{parent}"/>
    <child link="{child}"/>
    <origin xyz="{xyz[0]:.17g} {xyz[1]:.17g} {xyz[2]:.17g}" rpy="{rpy[0]:.17g} {rpy[1]:.17g} {rpy[2]:.17g}"/>
    <axis xyz="0 0 1"/>
    <limit effort="{effort}" velocity="{velocity}"/>
  </joint>
""")
        out.append(link_xml(child))
    out.append("""  <joint name="joint8" type="fixed">
    <parent link="link7"/>
    <child link="link8"/>
    <origin xyz="0 0 0.107" rpy="0 0 0"/>
  </joint>
  <link name="link8"/>
</robot>
""")
    write("urdf/panda.urdf", "".join(out))


def csv(header, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def static_hold():
    # 1-DOF hold at q = pi/2 for 3 s, positions only (derivatives are left to
    # derive_missing).
    q = math.pi / 2
    rows = [(k / 10.0, q) for k in range(31)]
    write("trajectories/static_hold_1dof.csv", csv("t,q_1", rows))


def pendulum_swing():
    # q = 0.5 sin(2*pi*0.5*t) over 4 s at 100 Hz with analytic derivatives.
    amp, omega = 0.5, 2.0 * math.pi * 0.5
    rows = []
    for k in range(401):
        t = k / 100.0
        rows.append((t,
                     amp * math.sin(omega * t),
                     amp * omega * math.cos(omega * t),
                     -amp * omega * omega * math.sin(omega * t)))
    write("trajectories/pendulum_swing.csv", csv("t,q_1,dq_1,ddq_1", rows))


def slider_run():
    # Constant acceleration q = t^2 over 2 s at 50 Hz; kinetic energy grows
    # monotonically, so the integrated mechanical energy is positive.
    rows = []
    for k in range(101):
        t = k / 50.0
        rows.append((t, t * t, 2.0 * t, 2.0))
    write("trajectories/slider_run.csv", csv("t,q_1,dq_1,ddq_1", rows))


def quintic(u):
    return 6 * u**5 - 15 * u**4 + 10 * u**3


def quintic_d(u):
    return 30 * u**4 - 60 * u**3 + 30 * u**2


def quintic_dd(u):
    return 120 * u**3 - 180 * u**2 + 60 * u


def panda_move():
    q0 = [0.0, -0.3, 0.0, -1.5, 0.0, 1.2, 0.8]
    q1 = [0.5, 0.3, -0.4, -2.0, 0.4, 1.8, 0.0]
    T = 4.0
    rows = []
    for k in range(201):
        t = k * T / 200.0
        u = t / T
        s, sd, sdd = quintic(u), quintic_d(u) / T, quintic_dd(u) / (T * T)
        row = [t]
        row += [a + (b - a) * s for a, b in zip(q0, q1)]
        row += [(b - a) * sd for a, b in zip(q0, q1)]
        row += [(b - a) * sdd for a, b in zip(q0, q1)]
        rows.append(row)
    header = ("t," + ",".join(f"q_{i}" for i in range(1, 8)) + ","
              + ",".join(f"dq_{i}" for i in range(1, 8)) + ","
              + ",".join(f"ddq_{i}" for i in range(1, 8)))
    write("trajectories/panda_move.csv", csv(header, rows))


def static_poses():
    # Eight synthetic 7-DOF poses. Powers are a noisy linear function of the
    # squared gravity-torque norm at each pose and average exactly 92.3 W, so
    # method 1 reproduces that mean and method 2 sees a plausible regression.
    poses = [
        [0.0, -0.2, 0.0, -1.2, 0.0, 1.0, 0.8],
        [0.3, 0.4, -0.2, -1.8, 0.2, 1.6, 0.4],
        [-0.4, 0.7, 0.3, -0.9, -0.3, 2.0, 0.0],
        [0.8, -0.6, 0.5, -2.2, 0.4, 0.8, 1.2],
        [1.2, 0.2, -0.6, -1.5, 0.6, 1.3, -0.5],
        [-0.9, 0.9, 0.1, -0.6, -0.5, 2.4, 0.6],
        [0.5, 1.1, -0.4, -2.6, 0.1, 0.5, 1.5],
        [-0.2, -0.8, 0.7, -1.0, -0.6, 1.9, -1.0],
    ]
    # ||G(q)||^2 of the bundled panda.urdf at these poses, taken from the
    # toolkit's identification report; regenerate if the URDF changes.
    g_norm_sq = [
        336.90086635872092, 1505.5057064674736, 2116.4781627181733, 322.35345659746758,
        1068.3491125689466, 2360.6732168901904, 633.85764964622263, 546.42199246771634,
    ]
    slope = 0.0036
    intercept = 92.3 - slope * sum(g_norm_sq) / len(g_norm_sq)
    noise = [0.31, -0.22, 0.18, -0.35, 0.09, -0.14, 0.27, -0.14]  # sums to zero
    powers = [slope * x + intercept + d for x, d in zip(g_norm_sq, noise)]
    lines = ["label," + ",".join(f"q_{i}" for i in range(1, 8)) + ",power_w"]
    for i, (pose, p) in enumerate(zip(poses, powers)):
        lines.append(f"pose_{chr(ord('a') + i)}," + ",".join(fmt(v) for v in pose)
                     + "," + fmt(p))
    write("measurements/static_poses.csv", "\n".join(lines) + "\n")


if __name__ == "__main__":
    panda_urdf()
    static_hold()
    pendulum_swing()
    slider_run()
    panda_move()
    static_poses()
