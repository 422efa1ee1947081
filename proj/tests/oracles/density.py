# Independent enumeration oracle for the density counts (sympy factorint).
# usage: python3 density.py cor32|t45 GRID
import math, sys
from sympy import factorint
from math import gcd
def sqf(n):
    s=-1 if n<0 else 1; d=1
    for p,e in factorint(abs(n)).items():
        if e%2: d*=p
    return s*d
def run(pieces, c, degg, grid):
    k=(degg+1)//2; e=2*k-degg
    best={}; maxF=0
    for a in range(1,grid+1):
        for b in range(1,grid+1):
            if gcd(a,b)!=1: continue
            vals=[c, b**e]+[sum(co*a**i*b**(len(p)-1-i) for i,co in enumerate(p)) for p in pieces]
            F=1
            for v in vals: F*=v
            if F==0: continue
            maxF=max(maxF,abs(F))
            D=1
            # merge
            exps={}
            sign=1
            for v in vals:
                if v<0: sign=-sign
                for p,ee in factorint(abs(v)).items(): exps[p]=exps.get(p,0)+ee
            for p,ee in exps.items():
                if ee%2: D*=p
            D*=sign
            key=(a+b,a)
            if D not in best or key<best[D]: best[D]=key
    xs=[]; e10=3
    while 10**e10<=maxF: xs.append(10**e10); e10+=1
    cnt=[sum(1 for D in best if abs(D)<x) for x in xs]
    pts=[(math.log(x),math.log(n)) for x,n in zip(xs,cnt) if n>0]
    n=len(pts); mx=sum(p[0] for p in pts)/n; my=sum(p[1] for p in pts)/n
    sl=sum((p[0]-mx)*(p[1]-my) for p in pts)/sum((p[0]-mx)**2 for p in pts)
    print('k',k,'maxF',maxF,'counts',cnt,'slope',sl)
grid=int(sys.argv[2])
if sys.argv[1]=='cor32':
    # g=-2(u^2+4)(u^4+6u^2+16); pieces low->high
    run([[4,0,1],[16,0,6,0,1]],-2,6,grid)
else:
    run([[1,0,0,0,1],[1,0,6,0,1],[1,0,-6,0,1]],6,12,grid)
