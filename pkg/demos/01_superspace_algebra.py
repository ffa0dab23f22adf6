"""
Superspace algebra and deformed derivatives
===========================================

Canonical expressions over an N=1 superspace: the superfield, the
superderivative, the deformed derivative of a jet, and the component
expansion of a deformed model.
"""

from fractions import Fraction

from ptskdv.supercalc import PHI, D_family, component_model, deformed_partial, super_D
from ptskdv.symcore import Exponent, to_latex, to_text

# the superfield is xi + theta*u; D = theta d/dx + d/dtheta
print("Phi      =", to_text(PHI))
print("D Phi    =", to_text(super_D(PHI)))
print("D^2 Phi  =", to_text(super_D(PHI, 2)))

# D^2 acts as d/dx on any expression
print("D^2 Phi == Phi_x :", super_D(PHI, 2) == super_D(super_D(PHI)))

# deformed derivative of a generic jet f with symbolic exponent eps
eps = Exponent.of("eps")
for n in (1, 2, 3):
    print(f"d^{n}_(x,eps) f =", to_text(deformed_partial("f", eps, n)))

# the third power of the check-deformed superderivative enters every deformed model
print("Dcheck^3 Phi =", to_text(D_family(PHI, "check", eps, 3)))

# rational exponents stay exact
print("d^2_(x,3/2) u =", to_text(deformed_partial("u", Fraction(3, 2), 2)))

# component equations of the deformed model with symbolic parameters
zs = component_model("zs")
for var, rhs in zs.equations.items():
    print(f"{var}_t =", to_text(rhs))
print("LaTeX:", to_latex(zs.equations["u"]))
