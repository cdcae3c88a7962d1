# usage: python3 m24_to_json.py m24_raw.txt m24_classes.json
# m24_raw.txt is written by m24.g (GAP). Class indices below follow GAP's
# ordering for CharacterTable(MathieuGroup(24)).
import re, json, hashlib, sys
lines=open(sys.argv[1]).read().splitlines()
classes={}; chars=[]
cur=None
for ln in lines:
    if ln.startswith('CLASS'):
        m=re.match(r'CLASS (\d+) (\d+) (\d+) \[(.*?)\] \[(.*)\]',ln)
        i,o,c,cyc,pw=m.groups()
        parts=cyc.split(',')
        cs={}
        for k,p in enumerate(parts):
            p=p.strip()
            if p: cs[k+2]=int(p)
        fixed=24-sum(l*m for l,m in cs.items())
        if fixed: cs[1]=fixed
        classes[int(i)]=dict(order=int(o),cent=int(c),cycles=sorted(cs.items()),pw=[int(x) for x in pw.split(',')])
    elif ln.startswith('CHAR'):
        _,j,d=ln.split(); cur={'deg':int(d),'vals':{}}; chars.append(cur)
    elif ln.strip():
        m=re.match(r'\s*(\d+) (\d+) \[(.*)\]',ln)
        i,n,co=m.groups()
        cur['vals'][int(i)]=(int(n),[int(x) for x in co.split(',')])
shape_names={
 ((1,24),):'1A',((1,8),(2,8)):'2A',((2,12),):'2B',((1,6),(3,6)):'3A',((3,8),):'3B',
 ((2,4),(4,4)):'4A',((1,4),(2,2),(4,4)):'4B',((4,6),):'4C',((1,4),(5,4)):'5A',
 ((1,2),(2,2),(3,2),(6,2)):'6A',((6,4),):'6B',((1,2),(2,1),(4,1),(8,2)):'8A',
 ((2,2),(10,2)):'10A',((1,2),(11,2)):'11A',((2,1),(4,1),(6,1),(12,1)):'12A',((12,2),):'12B'}
names={}
for i,c in classes.items():
    k=tuple(tuple(x) for x in c['cycles'])
    if k in shape_names: names[i]=shape_names[k]
names[12]='7A';names[13]='7B'
# 14A squares to 7A, 21A cubes to 7A
for i,c in classes.items():
    if c['order']==14: names[i]='14A' if c['pw'][0]==12 else '14B'
    if c['order']==21: names[i]='21A' if c['pw'][1]==12 else '21B'
names[25]='15A';names[26]='15B';names[18]='23A';names[19]='23B'
assert len(set(names.values()))==26
def natkey(n): return (int(n[:-1]),n[-1])
order=sorted(classes,key=lambda i:natkey(names[i]))
def cyc(v):
    n,co=v
    if n==1: return str(co[0])
    return {'order':n,'coeffs':[str(x) for x in co]}
# irreps: sort by degree, stable; label with letter for duplicates
cnt={}
irreps=[]
for ch in chars:
    d=ch['deg']; cnt[d]=cnt.get(d,0)+1
tmp={}
for ch in chars:
    d=ch['deg']
    k=tmp.get(d,0); tmp[d]=k+1
    lab=str(d) if cnt[d]==1 else str(d)+'abc'[k]
    irreps.append({'label':lab,'degree':d})
out=[]
for i in order:
    c=classes[i]
    out.append({'name':names[i],'element_order':c['order'],'cycle_shape':[list(x) for x in c['cycles']],
      'centralizer_order':c['cent'],'characters':[cyc(ch['vals'][i]) for ch in chars]})
body={'classes':out,'irreps':irreps}
canon=json.dumps(body,sort_keys=True,separators=(',',':'))
doc={'version':'m24-atlas-1','checksum':hashlib.sha256(canon.encode()).hexdigest(),**body}
json.dump(doc,open(sys.argv[2],'w'),indent=1)
print([(names[i],classes[i]['cycles']) for i in order])
print([ir['label'] for ir in irreps])
