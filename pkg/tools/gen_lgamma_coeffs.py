"""Print the (zeta(k) - 1)/k table used by bhconst.special.log_gamma."""
import mpmath as mp

mp.mp.dps = 40

for k in range(2, 31):
    print(f"    {mp.nstr((mp.zeta(k) - 1) / k, 20)},")
