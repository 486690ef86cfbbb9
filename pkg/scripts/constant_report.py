"""Print every ingredient of the main-term constant and the residue probes.

    python3 scripts/constant_report.py
"""

from cubica.hecke import dedekind_constants, dedekind_residue_probe, hecke_residue_probe
from cubica.moments import constant_c_family, constant_c_report, family_density, z_local_factor_at_3


def main():
    k = dedekind_constants()
    rep = constant_c_report()
    print(f"c_omega                   {k.c_omega:.12f}")
    print(f"L(2, chi_-3)              {k.L2_chi_minus3:.12f}")
    print(f"zeta_K(2)                 {k.zeta_Qw_2:.12f}")
    print(f"local factor of Z at 3    {z_local_factor_at_3():.12f}")
    print(f"Z(3/2) direct series      {rep.z_series:.10f}  (tail estimate {rep.z_series_tail:.2e})")
    print(f"Z(3/2) Euler product      {rep.z_euler:.10f}  (tail estimate {rep.z_euler_tail:.2e})")
    print(f"route gap                 {rep.route_gap:.2e}")
    print(f"c                         {rep.c:.10f}")
    print(f"family density D          {family_density():.6f}")
    print(f"c with (k, q) = 1 kept    {constant_c_family():.6f}")
    print(f"Dedekind residue probe    {dedekind_residue_probe(1e-3):.6f}")
    r = hecke_residue_probe(8)
    print(f"Hecke residue probe m=8   {r.estimate:.7f}  closed form {r.closed_form:.7f}  c_omega/2 {k.c_omega / 2:.7f}")


if __name__ == "__main__":
    main()
