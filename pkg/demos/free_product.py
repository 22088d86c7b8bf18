"""Z2 * Z3 through the finite-amalgam machinery: normal forms, the free
kernel of the permutational-product quotient, and a separating certificate."""

from lerf import certificates
from lerf.effgroups import FiniteGroup
from lerf.finamalg import FiniteAmalgam, member_finamalg, rewrite_in_kernel, separate_finamalg
from lerf.words import format_word, parse_word, parse_word_list

am = FiniteAmalgam(FiniteGroup(["s"], [(1, 0)]), FiniteGroup(["t"], [(1, 2, 0)]), [], [])
kd = am.kernel()
print(f"theta image order {kd.order}, kernel rank {kd.rank}")
for sym, w in zip(kd.symbols, kd.basis):
    print(f"  {sym} = {format_word(w)}")

w = parse_word("s t s^-1 t^-1")
print("[s, t] in basis:", format_word(rewrite_in_kernel(kd, w)))

U, g = parse_word_list("s t"), parse_word("t s")
print(f"t s in <s t>: {member_finamalg(am, U, g)}")
cert = separate_finamalg(am, U, g)
print(certificates.encode(cert), end="")
print("verifier:", certificates.verify(cert))
